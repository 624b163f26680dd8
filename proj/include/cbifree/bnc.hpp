#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "chi.hpp"
#include "partition.hpp"
#include "rational.hpp"

namespace cbifree {

inline constexpr std::size_t default_bnc_cap = 12;

/// Bi-non-crossing partition of [n] with respect to a chi map: the partition
/// is non-crossing after relabelling the line by s_chi.
class bnc_partition {
public:
    bnc_partition(blocks_t blocks, chi_map chi)
        : blocks_(canonical_blocks(std::move(blocks))), chi_(std::move(chi)) {}

    const blocks_t& blocks() const { return blocks_; }
    const chi_map& chi() const { return chi_; }
    std::size_t n() const { return chi_.size(); }
    std::size_t num_blocks() const { return blocks_.size(); }

    bool operator==(const bnc_partition& o) const {
        return blocks_ == o.blocks_ && chi_ == o.chi_;
    }
    bool operator<(const bnc_partition& o) const { return blocks_ < o.blocks_; }

    /// Refinement order; both sides must share chi.
    bool leq(const bnc_partition& o) const { return refines(blocks_, o.blocks_, n()); }

    bool is_bi_noncrossing() const {
        return is_noncrossing_under(blocks_, chi_.positions());
    }

    static bnc_partition minimum(const chi_map& chi) {  // 0_chi: singletons
        blocks_t b;
        for (std::size_t i = 0; i < chi.size(); ++i) b.push_back({i});
        return bnc_partition(std::move(b), chi);
    }

    static bnc_partition maximum(const chi_map& chi) {  // 1_chi: one block
        std::vector<std::size_t> all(chi.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return bnc_partition(blocks_t{all}, chi);
    }

private:
    blocks_t blocks_;
    chi_map chi_;
};

/// All of BNC(chi), obtained by pushing NC(n) forward through s_chi.
/// Sorted canonically and duplicate-free.
inline std::vector<bnc_partition> enumerate_bnc(const chi_map& chi,
                                                std::size_t cap = default_bnc_cap) {
    const std::size_t n = chi.size();
    if (n > cap)
        throw cap_exceeded_error("BNC enumeration capped at n = " + std::to_string(cap));
    auto s = chi.permutation();
    std::vector<bnc_partition> out;
    for (const auto& nu : enumerate_noncrossing(n)) {
        blocks_t pushed;
        pushed.reserve(nu.size());
        for (const auto& blk : nu) {
            std::vector<std::size_t> b;
            b.reserve(blk.size());
            for (auto j : blk) b.push_back(s[j]);
            pushed.push_back(std::move(b));
        }
        out.emplace_back(std::move(pushed), chi);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Interior/exterior labels per block, aligned with blocks() order.  A block V
/// is interior iff another block W has min(W) < min(V) and max(V) < max(W)
/// in the prec_chi order.
inline std::vector<bool> classify_interior(const bnc_partition& pi) {
    auto pos = pi.chi().positions();
    const auto& blocks = pi.blocks();
    std::vector<std::size_t> lo(blocks.size()), hi(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::size_t mn = pos[blocks[b].front()], mx = mn;
        for (auto i : blocks[b]) {
            mn = std::min(mn, pos[i]);
            mx = std::max(mx, pos[i]);
        }
        lo[b] = mn;
        hi[b] = mx;
    }
    std::vector<bool> interior(blocks.size(), false);
    for (std::size_t v = 0; v < blocks.size(); ++v)
        for (std::size_t w = 0; w < blocks.size(); ++w)
            if (w != v && lo[w] < lo[v] && hi[v] < hi[w]) {
                interior[v] = true;
                break;
            }
    return interior;
}

/// True iff every block lies in a single face.
inline bool vertically_split(const bnc_partition& pi) {
    for (const auto& b : pi.blocks()) {
        face f = pi.chi()[b.front()];
        for (auto i : b)
            if (pi.chi()[i] != f) return false;
    }
    return true;
}

/// Join in BNC(chi): set-partition join, then repeated merging of crossing
/// blocks until the result is bi-non-crossing again.
inline bnc_partition join(const bnc_partition& a, const bnc_partition& b) {
    if (!(a.chi() == b.chi())) throw precondition_error("join requires a common chi");
    const std::size_t n = a.n();
    auto pos = a.chi().positions();
    blocks_t cur = join_blocks(a.blocks(), b.blocks(), n);
    // Two blocks cross iff their merged prec-order trace alternates V W V W;
    // that is, it has at least three label changes.
    auto crosses = [&](const std::vector<std::size_t>& v, const std::vector<std::size_t>& w) {
        std::vector<std::pair<std::size_t, int>> merged;
        for (auto i : v) merged.emplace_back(pos[i], 0);
        for (auto i : w) merged.emplace_back(pos[i], 1);
        std::sort(merged.begin(), merged.end());
        int changes = 0;
        for (std::size_t k = 1; k < merged.size(); ++k)
            if (merged[k].second != merged[k - 1].second) ++changes;
        return changes >= 3;
    };
    for (;;) {
        long cross_v = -1, cross_w = -1;
        for (std::size_t v = 0; v < cur.size() && cross_v < 0; ++v)
            for (std::size_t w = v + 1; w < cur.size(); ++w)
                if (crosses(cur[v], cur[w])) {
                    cross_v = static_cast<long>(v);
                    cross_w = static_cast<long>(w);
                    break;
                }
        if (cross_v < 0) break;
        auto merged = cur[static_cast<std::size_t>(cross_v)];
        for (auto i : cur[static_cast<std::size_t>(cross_w)]) merged.push_back(i);
        blocks_t next;
        for (std::size_t v = 0; v < cur.size(); ++v)
            if (v != static_cast<std::size_t>(cross_v) && v != static_cast<std::size_t>(cross_w))
                next.push_back(cur[v]);
        next.push_back(merged);
        cur = canonical_blocks(std::move(next));
    }
    return bnc_partition(std::move(cur), a.chi());
}

namespace detail {

inline std::vector<int> key_of(const bnc_partition& p) {
    return block_labels(p.blocks(), p.n());
}

}  // namespace detail

/// Möbius function of BNC(chi) by the defining recursion
///   sum_{sigma <= tau <= pi} mu(tau, pi) = [sigma == pi],
/// memoized over the interval [sigma, pi].
inline rational mobius_bnc(const bnc_partition& sigma, const bnc_partition& pi,
                           std::size_t cap = default_bnc_cap) {
    if (!(sigma.chi() == pi.chi())) throw precondition_error("mobius requires a common chi");
    if (!sigma.leq(pi))
        throw not_comparable_error("mobius_bnc: sigma is not a refinement of pi");
    auto lattice = enumerate_bnc(sigma.chi(), cap);
    std::vector<const bnc_partition*> interval;
    for (const auto& tau : lattice)
        if (sigma.leq(tau) && tau.leq(pi)) interval.push_back(&tau);
    // mu(tau, pi) = [tau == pi] - sum_{tau < upsilon <= pi} mu(upsilon, pi)
    std::map<std::vector<int>, rational> memo;
    auto mu = [&](auto&& self, const bnc_partition& tau) -> rational {
        auto key = detail::key_of(tau);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        rational val = (tau == pi) ? 1 : 0;
        for (const auto* ups : interval)
            if (tau.leq(*ups) && !(*ups == tau)) val -= self(self, *ups);
        memo.emplace(std::move(key), val);
        return val;
    };
    return mu(mu, sigma);
}

/// Per-chi lattice data shared across many word evaluations: the partitions,
/// their interior flags, and mu(., 1_chi).
struct chi_lattice {
    std::vector<bnc_partition> lattice;
    std::vector<std::vector<bool>> interior;
    std::vector<rational> mu_top;
};

/// mu(sigma, 1_chi) for every sigma of a pre-enumerated BNC(chi), aligned with
/// the input order.  One descending pass over the lattice.
inline std::vector<rational> mobius_to_maximum(const std::vector<bnc_partition>& lattice) {
    const std::size_t m = lattice.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lattice[a].num_blocks() < lattice[b].num_blocks();
    });
    std::vector<rational> mu(m);
    for (std::size_t oi = 0; oi < m; ++oi) {
        auto i = order[oi];
        rational val = lattice[i].num_blocks() == 1 ? 1 : 0;
        for (std::size_t oj = 0; oj < oi; ++oj) {
            auto j = order[oj];
            if (lattice[i].leq(lattice[j]) && !(lattice[i] == lattice[j])) val -= mu[j];
        }
        mu[i] = val;
    }
    return mu;
}

/// Memoizes per-chi lattice data; confine one context per computation (it is
/// not synchronized).
class bnc_context {
public:
    explicit bnc_context(std::size_t cap = default_bnc_cap) : cap_(cap) {}

    const chi_lattice& data_for(const chi_map& chi) {
        auto key = chi.str();
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        chi_lattice d;
        d.lattice = enumerate_bnc(chi, cap_);
        d.interior.reserve(d.lattice.size());
        for (const auto& pi : d.lattice) d.interior.push_back(classify_interior(pi));
        d.mu_top = mobius_to_maximum(d.lattice);
        return cache_.emplace(std::move(key), std::move(d)).first->second;
    }

private:
    std::size_t cap_;
    std::map<std::string, chi_lattice> cache_;
};

}  // namespace cbifree
