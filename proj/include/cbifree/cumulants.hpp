#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bnc.hpp"
#include "distribution.hpp"

namespace cbifree {

namespace detail {

inline word_t subword(const word_t& w, const std::vector<std::size_t>& block) {
    word_t s;
    s.reserve(block.size());
    for (auto i : block) s.push_back(w[i]);
    return s;
}

}  // namespace detail

/// (l, r)- and c-(l, r)-cumulant extraction from a stored distribution.
/// kappa comes from psi by Möbius inversion over BNC(chi); the conditional
/// cumulant follows the defining recursion with kappa on interior blocks and
/// itself on exterior blocks.  Memoized per instance.
class cumulant_calculator {
public:
    explicit cumulant_calculator(const two_state_distribution& dist) : dist_(dist) {}

    /// kappa_chi(a_1, ..., a_n) = sum_sigma psi_sigma * mu_BNC(sigma, 1_chi).
    rational kappa(const word_t& w) {
        if (auto it = kappa_memo_.find(w); it != kappa_memo_.end()) return it->second;
        const auto& data = ctx_.data_for(dist_.chi_of(w));
        rational sum = 0;
        for (std::size_t s = 0; s < data.lattice.size(); ++s) {
            if (data.mu_top[s] == 0) continue;
            rational term = data.mu_top[s];
            for (const auto& v : data.lattice[s].blocks())
                term *= dist_.psi(detail::subword(w, v));
            sum += term;
        }
        kappa_memo_.emplace(w, sum);
        return sum;
    }

    /// K_chi(a_1, ..., a_n) = phi(a_1...a_n) - sum over pi != 1_chi of K_pi.
    rational conditional(const word_t& w) {
        if (auto it = ck_memo_.find(w); it != ck_memo_.end()) return it->second;
        rational val = dist_.phi(w);
        if (w.size() > 1) {
            const auto& data = ctx_.data_for(dist_.chi_of(w));
            for (std::size_t p = 0; p < data.lattice.size(); ++p) {
                if (data.lattice[p].num_blocks() == 1) continue;
                val -= product_over(w, data.lattice[p], data.interior[p]);
            }
        }
        ck_memo_.emplace(w, val);
        return val;
    }

    /// K_pi: kappa over interior blocks, K over exterior blocks.
    rational mixed_product(const word_t& w, const bnc_partition& pi) {
        return product_over(w, pi, classify_interior(pi));
    }

    /// kappa_pi: plain block product of kappas.
    rational kappa_product(const word_t& w, const bnc_partition& pi) {
        rational prod = 1;
        for (const auto& v : pi.blocks()) {
            prod *= kappa(detail::subword(w, v));
            if (prod == 0) break;
        }
        return prod;
    }

    const two_state_distribution& distribution() const { return dist_; }

private:
    rational product_over(const word_t& w, const bnc_partition& pi,
                          const std::vector<bool>& interior) {
        rational prod = 1;
        for (std::size_t b = 0; b < pi.blocks().size(); ++b) {
            auto sub = detail::subword(w, pi.blocks()[b]);
            prod *= interior[b] ? kappa(sub) : conditional(sub);
            if (prod == 0) break;
        }
        return prod;
    }

    const two_state_distribution& dist_;
    bnc_context ctx_;
    std::map<word_t, rational> kappa_memo_;
    std::map<word_t, rational> ck_memo_;
};

inline rational lr_cumulant(const two_state_distribution& dist, const word_t& w) {
    return cumulant_calculator(dist).kappa(w);
}

inline rational c_cumulant(const two_state_distribution& dist, const word_t& w) {
    return cumulant_calculator(dist).conditional(w);
}

struct kappa_ck {
    rational kappa;
    rational ck;
};

/// Both cumulant families for every word up to a degree bound.
class cumulant_table {
public:
    cumulant_table() = default;
    cumulant_table(std::size_t degree, std::map<word_t, kappa_ck> values)
        : degree_(degree), values_(std::move(values)) {}

    /// Extracts the full table from a distribution.
    static cumulant_table from_distribution(const two_state_distribution& dist,
                                            std::size_t degree) {
        cumulant_calculator calc(dist);
        std::map<word_t, kappa_ck> values;
        for (const auto& w : all_words(dist.alphabet().size(), degree))
            values.emplace(w, kappa_ck{calc.kappa(w), calc.conditional(w)});
        return cumulant_table(degree, std::move(values));
    }

    std::size_t degree() const { return degree_; }
    const std::map<word_t, kappa_ck>& values() const { return values_; }

    const kappa_ck& at(const word_t& w) const {
        auto it = values_.find(w);
        if (it == values_.end())
            throw incomplete_table_error("cumulant table lacks a word of length " +
                                         std::to_string(w.size()));
        return it->second;
    }

private:
    std::size_t degree_ = 0;
    std::map<word_t, kappa_ck> values_;
};

/// Inverse direction: moments from a cumulant table.
///   psi = sum over BNC of the block product of kappas,
///   phi = sum over BNC with kappa on interior and K on exterior blocks.
inline phi_psi cumulants_to_moments(const cumulant_table& table, const word_t& w,
                                    const chi_map& chi, bnc_context& ctx) {
    if (w.empty()) return {1, 1};
    if (w.size() > table.degree())
        throw incomplete_table_error("cumulant table is complete only to degree " +
                                     std::to_string(table.degree()));
    rational psi = 0, phi = 0;
    const auto& data = ctx.data_for(chi);
    for (std::size_t p = 0; p < data.lattice.size(); ++p) {
        const auto& pi = data.lattice[p];
        rational pk = 1, pK = 1;
        for (std::size_t b = 0; b < pi.blocks().size(); ++b) {
            const auto& entry = table.at(detail::subword(w, pi.blocks()[b]));
            pk *= entry.kappa;
            pK *= data.interior[p][b] ? entry.kappa : entry.ck;
        }
        psi += pk;
        phi += pK;
    }
    return {phi, psi};
}

inline phi_psi cumulants_to_moments(const cumulant_table& table, const word_t& w,
                                    const chi_map& chi) {
    bnc_context ctx;
    return cumulants_to_moments(table, w, chi, ctx);
}

/// Cumulants with grouped (multiplied) arguments.  cuts = (k(1) < ... < k(m) = n)
/// are the right endpoints of the factor groups; each group must sit in a
/// single face.  Evaluates
///   K_(1_chi)(a_1...a_k(1), ..., a_(k(m-1)+1)...a_n)
///     = sum over sigma in BNC(chi_hat) with sigma v hat0 = 1 of K_sigma,
/// and the kappa analogue.
inline kappa_ck cumulant_of_products(const two_state_distribution& dist, const word_t& w,
                                     const std::vector<std::size_t>& cuts) {
    if (cuts.empty() || cuts.back() != w.size())
        throw precondition_error("grouping must cover the whole word");
    auto chi = dist.chi_of(w);
    blocks_t groups;
    std::size_t start = 0;
    for (auto end : cuts) {
        if (end <= start || end > w.size()) throw precondition_error("grouping must be increasing");
        std::vector<std::size_t> g;
        for (std::size_t i = start; i < end; ++i) {
            g.push_back(i);
            if (chi[i] != chi[start])
                throw mixed_face_group_error("product group straddles both faces");
        }
        groups.push_back(std::move(g));
        start = end;
    }
    bnc_partition grouped(groups, chi);
    auto one = bnc_partition::maximum(chi);
    cumulant_calculator calc(dist);
    kappa_ck out{0, 0};
    for (const auto& sigma : enumerate_bnc(chi)) {
        if (!(join(sigma, grouped) == one)) continue;
        out.kappa += calc.kappa_product(w, sigma);
        out.ck += calc.mixed_product(w, sigma);
    }
    return out;
}

}  // namespace cbifree
