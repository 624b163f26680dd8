#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cumulants.hpp"
#include "lr.hpp"

namespace cbifree {

/// One position of a word over several independent inputs: which input the
/// letter comes from and its index in that input's alphabet.
struct joint_letter {
    std::size_t input;
    std::size_t local;
};
using joint_word = std::vector<joint_letter>;

namespace detail {

inline chi_map joint_chi(const std::vector<two_state_distribution>& dists, const joint_word& w) {
    std::vector<face> f;
    f.reserve(w.size());
    for (const auto& l : w) f.push_back(dists[l.input].alphabet()[l.local].side);
    return chi_map(std::move(f));
}

inline omega_map joint_omega(const joint_word& w) {
    std::vector<int> c;
    c.reserve(w.size());
    for (const auto& l : w) c.push_back(static_cast<int>(l.input));
    return omega_map(std::move(c));
}

inline bool blocks_monochromatic(const blocks_t& blocks, const joint_word& w) {
    for (const auto& b : blocks)
        for (auto i : b)
            if (w[i].input != w[b.front()].input) return false;
    return true;
}

inline phi_psi block_moment(const std::vector<two_state_distribution>& dists, const joint_word& w,
                            const std::vector<std::size_t>& block) {
    word_t local;
    local.reserve(block.size());
    for (auto i : block) local.push_back(w[i].local);
    return dists[w[block.front()].input].moment(local);
}

}  // namespace detail

/// psi moment of a c-bi-free family from its inputs' distributions:
///   psi(a_1...a_n) = sum over pi in BNC refining omega of
///     [ sum_{pi <= sigma <= omega} mu_BNC(pi, sigma) ] psi_pi.
inline rational psi_moment_formula(const std::vector<two_state_distribution>& dists,
                                   const joint_word& w, std::size_t cap = default_bnc_cap) {
    auto chi = detail::joint_chi(dists, w);
    auto lattice = enumerate_bnc(chi, cap);
    std::vector<bool> mono(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i)
        mono[i] = detail::blocks_monochromatic(lattice[i].blocks(), w);
    rational total = 0;
    for (std::size_t p = 0; p < lattice.size(); ++p) {
        if (!mono[p]) continue;
        // interval [pi, omega] inside BNC(chi)
        std::vector<std::size_t> interval;
        for (std::size_t s = 0; s < lattice.size(); ++s)
            if (mono[s] && lattice[p].leq(lattice[s])) interval.push_back(s);
        // mu(pi, sigma) by the ascending recursion on the second argument
        std::sort(interval.begin(), interval.end(), [&](std::size_t a, std::size_t b) {
            return lattice[a].num_blocks() > lattice[b].num_blocks();
        });
        std::map<std::size_t, rational> mu;
        rational coeff = 0;
        for (auto s : interval) {
            rational val = (s == p) ? 1 : 0;
            for (auto t : interval)
                if (t != s && lattice[t].leq(lattice[s])) val -= mu[t];
            mu[s] = val;
            coeff += val;
        }
        if (coeff == 0) continue;
        rational prod = 1;
        for (const auto& b : lattice[p].blocks())
            prod *= detail::block_moment(dists, w, b).psi;
        total += coeff * prod;
    }
    return total;
}

/// phi moment via the shaded-diagram expansion:
///   phi(a_1...a_n) = sum over D in LR^latcap(chi, omega) of C'_D phi_D.
inline rational phi_moment_formula(const std::vector<two_state_distribution>& dists,
                                   const joint_word& w, std::size_t cap = default_lr_cap) {
    auto chi = detail::joint_chi(dists, w);
    auto omega = detail::joint_omega(w);
    auto lr_all = enumerate_lr(chi, omega, cap);
    rational total = 0;
    for (const auto& d : enumerate_latcap(chi, omega, cap)) {
        auto c = coefficient_cprime_checked(d, lr_all);
        if (c.value == 0) continue;
        rational prod = 1;
        for (std::size_t b = 0; b < d.blocks().size() && prod != 0; ++b) {
            auto m = detail::block_moment(dists, w, d.blocks()[b]);
            prod *= d.is_top(b) ? m.phi : m.psi;
        }
        total += rational(c.value) * prod;
    }
    return total;
}

/// Joint distribution of c-bi-free inputs over the disjoint union alphabet.
/// Cumulant tables are unioned (mixed entries vanish) and moments recovered
/// from them; the resulting generators carry the input index as family.
inline two_state_distribution cbf_join(const std::vector<two_state_distribution>& dists,
                                       std::size_t degree) {
    if (dists.empty()) throw precondition_error("cbf_join needs at least one input");
    std::vector<generator> alphabet;
    std::vector<joint_letter> letter_of;
    for (std::size_t d = 0; d < dists.size(); ++d) {
        if (dists[d].degree() < degree)
            throw incomplete_table_error("input " + std::to_string(d) +
                                         " is not complete to the requested degree");
        for (std::size_t i = 0; i < dists[d].alphabet().size(); ++i) {
            auto g = dists[d].alphabet()[i];
            for (const auto& seen : alphabet)
                if (seen.symbol == g.symbol)
                    throw alphabet_collision_error("symbol \"" + g.symbol +
                                                   "\" appears in two inputs");
            g.family = static_cast<int>(d);
            alphabet.push_back(g);
            letter_of.push_back({d, i});
        }
    }
    // joint cumulants: per-input extraction, zero across inputs
    std::vector<cumulant_calculator> calcs;
    calcs.reserve(dists.size());
    for (const auto& d : dists) calcs.emplace_back(d);
    std::map<word_t, kappa_ck> values;
    for (const auto& w : all_words(alphabet.size(), degree)) {
        bool mixed = false;
        for (auto i : w)
            if (letter_of[i].input != letter_of[w.front()].input) mixed = true;
        if (mixed) {
            values.emplace(w, kappa_ck{0, 0});
        } else {
            word_t local;
            for (auto i : w) local.push_back(letter_of[i].local);
            auto& calc = calcs[letter_of[w.front()].input];
            values.emplace(w, kappa_ck{calc.kappa(local), calc.conditional(local)});
        }
    }
    cumulant_table table(degree, std::move(values));
    bnc_context ctx;
    std::map<word_t, phi_psi> moments;
    for (const auto& w : all_words(alphabet.size(), degree)) {
        std::vector<face> f;
        for (auto i : w) f.push_back(alphabet[i].side);
        moments.emplace(w, cumulants_to_moments(table, w, chi_map(std::move(f)), ctx));
    }
    return two_state_distribution(std::move(alphabet), degree, std::move(moments));
}

struct independence_witness {
    word_t word;
    bool conditional;  // false: kappa, true: K
    rational value;
};

struct independence_result {
    bool independent = true;
    std::optional<independence_witness> witness;
};

/// Checks combinatorial c-bi-freeness of the family grouping encoded in the
/// generators' family tags: all mixed kappa and K up to the degree must
/// vanish.  Reports the first violating word otherwise.
inline independence_result is_cbf_independent(const two_state_distribution& joint,
                                              std::size_t degree);

/// Grouping supplied explicitly as symbol -> family, overriding the tags.
inline independence_result is_cbf_independent(const two_state_distribution& joint,
                                              const std::map<std::string, int>& grouping,
                                              std::size_t degree) {
    auto alphabet = joint.alphabet();
    for (auto& g : alphabet) {
        auto it = grouping.find(g.symbol);
        if (it == grouping.end())
            throw schema_error("grouping lacks symbol \"" + g.symbol + "\"");
        g.family = it->second;
    }
    two_state_distribution retagged(std::move(alphabet), joint.degree(), joint.moments());
    return is_cbf_independent(retagged, degree);
}

inline independence_result is_cbf_independent(const two_state_distribution& joint,
                                              std::size_t degree) {
    cumulant_calculator calc(joint);
    for (const auto& w : all_words(joint.alphabet().size(), degree)) {
        if (w.size() < 2) continue;
        bool mixed = false;
        for (auto i : w)
            if (joint.alphabet()[i].family != joint.alphabet()[w.front()].family) mixed = true;
        if (!mixed) continue;
        if (auto k = calc.kappa(w); k != 0) return {false, independence_witness{w, false, k}};
        if (auto K = calc.conditional(w); K != 0)
            return {false, independence_witness{w, true, K}};
    }
    return {};
}

}  // namespace cbifree
