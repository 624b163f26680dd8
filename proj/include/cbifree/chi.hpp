#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cbifree {

enum class face : char { left = 'L', right = 'R' };

/// Face assignment chi : [n] -> {L, R} for the positions of a word.
class chi_map {
public:
    chi_map() = default;

    explicit chi_map(std::vector<face> faces) : faces_(std::move(faces)) {
        if (faces_.empty()) throw precondition_error("chi map must have length >= 1");
    }

    /// From a string like "LLRL".
    explicit chi_map(const std::string& s) {
        if (s.empty()) throw precondition_error("chi map must have length >= 1");
        faces_.reserve(s.size());
        for (char c : s) {
            if (c == 'L' || c == 'l')
                faces_.push_back(face::left);
            else if (c == 'R' || c == 'r')
                faces_.push_back(face::right);
            else
                throw schema_error(std::string("invalid chi character '") + c + "'");
        }
    }

    std::size_t size() const { return faces_.size(); }
    face operator[](std::size_t i) const { return faces_[i]; }  // 0-based
    const std::vector<face>& faces() const { return faces_; }

    bool operator==(const chi_map& o) const { return faces_ == o.faces_; }

    std::string str() const {
        std::string s;
        for (face f : faces_) s += static_cast<char>(f);
        return s;
    }

    /// s_chi as a 0-based permutation: s[k] is the node at prec-position k,
    /// left nodes in increasing order followed by right nodes in decreasing order.
    std::vector<std::size_t> permutation() const {
        std::vector<std::size_t> s;
        s.reserve(size());
        for (std::size_t i = 0; i < size(); ++i)
            if (faces_[i] == face::left) s.push_back(i);
        for (std::size_t i = size(); i-- > 0;)
            if (faces_[i] == face::right) s.push_back(i);
        return s;
    }

    /// Inverse of permutation(): position[i] = rank of node i in the prec_chi order.
    std::vector<std::size_t> positions() const {
        auto s = permutation();
        std::vector<std::size_t> pos(size());
        for (std::size_t k = 0; k < s.size(); ++k) pos[s[k]] = k;
        return pos;
    }

    chi_map restrict_to(const std::vector<std::size_t>& nodes) const {
        std::vector<face> f;
        f.reserve(nodes.size());
        for (auto i : nodes) f.push_back(faces_[i]);
        return chi_map(std::move(f));
    }

private:
    std::vector<face> faces_;
};

/// Family colouring omega : [n] -> K.
class omega_map {
public:
    omega_map() = default;

    explicit omega_map(std::vector<int> colours) : colours_(std::move(colours)) {
        if (colours_.empty()) throw precondition_error("omega map must have length >= 1");
    }

    static omega_map constant(std::size_t n, int colour = 0) {
        return omega_map(std::vector<int>(n, colour));
    }

    std::size_t size() const { return colours_.size(); }
    int operator[](std::size_t i) const { return colours_[i]; }
    const std::vector<int>& colours() const { return colours_; }

    bool is_constant() const {
        for (int c : colours_)
            if (c != colours_.front()) return false;
        return true;
    }

    bool operator==(const omega_map& o) const { return colours_ == o.colours_; }

private:
    std::vector<int> colours_;
};

}  // namespace cbifree
