#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chi.hpp"
#include "rational.hpp"

namespace cbifree {

/// One abstract generator a_i living in face chi(i) of family omega(i).
struct generator {
    std::string symbol;
    int family = 0;
    face side = face::left;
    bool is_unit = false;  // the distinguished unit: inserting it changes nothing

    bool operator==(const generator& o) const {
        return symbol == o.symbol && family == o.family && side == o.side && is_unit == o.is_unit;
    }
};

/// Word over an alphabet, as indices into it.
using word_t = std::vector<std::size_t>;

struct phi_psi {
    rational phi;
    rational psi;
};

/// Extensional joint pair-distribution: exact (phi, psi) values for every
/// word over the alphabet up to a degree bound.  The empty word is (1, 1).
class two_state_distribution {
public:
    two_state_distribution() = default;

    two_state_distribution(std::vector<generator> alphabet, std::size_t degree,
                           std::map<word_t, phi_psi> moments)
        : alphabet_(std::move(alphabet)), degree_(degree), moments_(std::move(moments)) {
        for (std::size_t i = 0; i < alphabet_.size(); ++i)
            for (std::size_t j = i + 1; j < alphabet_.size(); ++j)
                if (alphabet_[i].symbol == alphabet_[j].symbol)
                    throw schema_error("duplicate symbol \"" + alphabet_[i].symbol + "\"");
    }

    const std::vector<generator>& alphabet() const { return alphabet_; }
    std::size_t degree() const { return degree_; }
    const std::map<word_t, phi_psi>& moments() const { return moments_; }

    std::size_t index_of(const std::string& symbol) const {
        for (std::size_t i = 0; i < alphabet_.size(); ++i)
            if (alphabet_[i].symbol == symbol) return i;
        throw schema_error("unknown symbol \"" + symbol + "\"");
    }

    chi_map chi_of(const word_t& w) const {
        std::vector<face> f;
        f.reserve(w.size());
        for (auto i : w) f.push_back(alphabet_[i].side);
        return chi_map(std::move(f));
    }

    omega_map omega_of(const word_t& w) const {
        std::vector<int> c;
        c.reserve(w.size());
        for (auto i : w) c.push_back(alphabet_[i].family);
        return omega_map(std::move(c));
    }

    rational phi(const word_t& w) const { return lookup(w).phi; }
    rational psi(const word_t& w) const { return lookup(w).psi; }
    phi_psi moment(const word_t& w) const { return lookup(w); }

    /// Overwrites one stored moment (used by fault injection).
    void set_moment(const word_t& w, phi_psi v) { moments_[strip_units(w)] = v; }

    word_t strip_units(const word_t& w) const {
        word_t out;
        out.reserve(w.size());
        for (auto i : w)
            if (!alphabet_[i].is_unit) out.push_back(i);
        return out;
    }

    std::string word_string(const word_t& w) const {
        std::string s;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (k) s += ',';
            s += alphabet_[w[k]].symbol;
        }
        return s;
    }

private:
    phi_psi lookup(const word_t& w) const {
        word_t key = strip_units(w);
        if (key.empty()) return {1, 1};
        if (key.size() > degree_)
            throw missing_moment_error("word of length " + std::to_string(key.size()) +
                                       " exceeds stored degree " + std::to_string(degree_));
        auto it = moments_.find(key);
        if (it == moments_.end())
            throw missing_moment_error("no stored moment for word \"" + word_string(key) + "\"");
        return it->second;
    }

    std::vector<generator> alphabet_;
    std::size_t degree_ = 0;
    std::map<word_t, phi_psi> moments_;
};

/// All words of length 1..degree over an alphabet of the given size,
/// shortest first, lexicographic within a length.
inline std::vector<word_t> all_words(std::size_t alphabet_size, std::size_t degree) {
    std::vector<word_t> out;
    std::vector<word_t> layer{word_t{}};
    for (std::size_t len = 1; len <= degree; ++len) {
        std::vector<word_t> next;
        next.reserve(layer.size() * alphabet_size);
        for (const auto& w : layer)
            for (std::size_t a = 0; a < alphabet_size; ++a) {
                word_t e = w;
                e.push_back(a);
                next.push_back(std::move(e));
            }
        for (const auto& w : next) out.push_back(w);
        layer = std::move(next);
    }
    return out;
}

}  // namespace cbifree
