#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "bnc.hpp"
#include "chi.hpp"
#include "distribution.hpp"
#include "partition.hpp"

namespace cbifree {

inline constexpr std::size_t default_lr_cap = 8;

/// Shaded LR-diagram: an omega-monochromatic bi-non-crossing partition with a
/// distinguished list of blocks whose spines reach the top, kept in
/// left-to-right order.  Identity is (partition, top set); the order of the
/// top list is diagnostic only.
class lr_diagram {
public:
    lr_diagram(blocks_t blocks, std::vector<std::size_t> top_in_block_order, chi_map chi,
               omega_map omega)
        : chi_(std::move(chi)), omega_(std::move(omega)) {
        // canonicalize blocks while carrying the top list through the reorder
        std::vector<std::vector<std::size_t>> tagged = blocks;
        blocks_ = canonical_blocks(std::move(blocks));
        top_.reserve(top_in_block_order.size());
        for (auto old_idx : top_in_block_order) {
            auto sorted = tagged[old_idx];
            std::sort(sorted.begin(), sorted.end());
            auto it = std::find(blocks_.begin(), blocks_.end(), sorted);
            top_.push_back(static_cast<std::size_t>(it - blocks_.begin()));
        }
    }

    const blocks_t& blocks() const { return blocks_; }
    /// Indices into blocks() whose spines reach the top, left to right.
    const std::vector<std::size_t>& top() const { return top_; }
    const chi_map& chi() const { return chi_; }
    const omega_map& omega() const { return omega_; }

    std::size_t n() const { return chi_.size(); }
    std::size_t num_top() const { return top_.size(); }

    /// |D| = number of blocks + number of spines reaching the top.
    std::size_t weight() const { return blocks_.size() + top_.size(); }

    bool is_top(std::size_t block_index) const {
        return std::find(top_.begin(), top_.end(), block_index) != top_.end();
    }

    std::set<std::vector<std::size_t>> top_node_sets() const {
        std::set<std::vector<std::size_t>> s;
        for (auto b : top_) s.insert(blocks_[b]);
        return s;
    }

    bnc_partition partition() const { return bnc_partition(blocks_, chi_); }

    bool omega_monochromatic() const {
        for (const auto& b : blocks_) {
            int c = omega_[b.front()];
            for (auto i : b)
                if (omega_[i] != c) return false;
        }
        return true;
    }

    /// Identity on (partition, top set).
    bool operator==(const lr_diagram& o) const {
        return blocks_ == o.blocks_ && sorted_top() == o.sorted_top() && chi_ == o.chi_ &&
               omega_ == o.omega_;
    }
    bool operator<(const lr_diagram& o) const {
        if (blocks_ != o.blocks_) return blocks_ < o.blocks_;
        return sorted_top() < o.sorted_top();
    }

private:
    std::vector<std::size_t> sorted_top() const {
        auto t = top_;
        std::sort(t.begin(), t.end());
        return t;
    }

    blocks_t blocks_;
    std::vector<std::size_t> top_;
    chi_map chi_;
    omega_map omega_;
};

/// LR(chi, omega), built by the top-down recursion: nodes are processed from
/// the bottom (node n) to the top (node 1) keeping the ordered list of open
/// spines; a left node connects to the leftmost open spine when shades match,
/// a right node to the rightmost, and otherwise starts fresh.  2^n diagrams.
inline std::vector<lr_diagram> enumerate_lr(const chi_map& chi, const omega_map& omega,
                                            std::size_t cap = default_lr_cap) {
    const std::size_t n = chi.size();
    if (omega.size() != n) throw precondition_error("omega length must match chi");
    if (n > cap)
        throw cap_exceeded_error("LR enumeration capped at n = " + std::to_string(cap));

    struct state {
        blocks_t blocks;
        std::vector<std::size_t> open;  // block indices, left to right
    };
    std::vector<state> frontier{state{}};
    for (std::size_t step = n; step-- > 0;) {
        std::vector<state> next;
        next.reserve(frontier.size() * 2);
        const bool left = chi[step] == face::left;
        const int shade = omega[step];
        for (const auto& st : frontier) {
            const std::size_t nearest_pos = left ? 0 : st.open.size() - 1;
            const bool can_connect =
                !st.open.empty() && omega[st.blocks[st.open[nearest_pos]].front()] == shade;
            if (can_connect) {
                auto blk = st.open[nearest_pos];
                state keep = st;
                keep.blocks[blk].push_back(step);
                next.push_back(std::move(keep));
                state close = st;
                close.blocks[blk].push_back(step);
                close.open.erase(close.open.begin() + static_cast<long>(nearest_pos));
                next.push_back(std::move(close));
            } else {
                state isolated = st;
                isolated.blocks.push_back({step});
                next.push_back(std::move(isolated));
                state fresh = st;
                fresh.blocks.push_back({step});
                auto id = fresh.blocks.size() - 1;
                if (left)
                    fresh.open.insert(fresh.open.begin(), id);
                else
                    fresh.open.push_back(id);
                next.push_back(std::move(fresh));
            }
        }
        frontier = std::move(next);
    }
    std::vector<lr_diagram> out;
    out.reserve(frontier.size());
    for (auto& st : frontier) out.emplace_back(st.blocks, st.open, chi, omega);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Lateral refinements of D: every block is cut between consecutive ribs into
/// intervals of its node list.  A spine reaching the top keeps doing so
/// through the piece holding its topmost (minimal) node; every other piece is
/// closed, so the number of top spines is preserved.  Contains D itself.
inline std::vector<lr_diagram> lateral_refinements(const lr_diagram& d) {
    // per-block choices: a block of size k has 2^(k-1) interval decompositions
    const auto& blocks = d.blocks();
    std::vector<std::vector<blocks_t>> options(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& v = blocks[b];
        for (std::size_t mask = 0; mask < (std::size_t{1} << (v.size() - 1)); ++mask) {
            blocks_t pieces;
            std::vector<std::size_t> piece{v[0]};
            for (std::size_t k = 1; k < v.size(); ++k) {
                if (mask & (std::size_t{1} << (k - 1))) {
                    pieces.push_back(piece);
                    piece.clear();
                }
                piece.push_back(v[k]);
            }
            pieces.push_back(piece);
            options[b].push_back(std::move(pieces));
        }
    }
    std::vector<lr_diagram> out;
    std::vector<std::size_t> choice(blocks.size(), 0);
    for (;;) {
        blocks_t all;
        std::vector<std::size_t> first_piece(blocks.size());  // piece holding min node
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            first_piece[b] = all.size();
            for (const auto& piece : options[b][choice[b]]) all.push_back(piece);
        }
        std::vector<std::size_t> ordered_top;
        for (auto t : d.top()) ordered_top.push_back(first_piece[t]);
        out.emplace_back(all, ordered_top, d.chi(), d.omega());
        std::size_t b = 0;
        for (; b < blocks.size(); ++b) {
            if (++choice[b] < options[b].size()) break;
            choice[b] = 0;
        }
        if (b == blocks.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// The 2^t cappings of D: every subset of top spines removed.  Contains D.
inline std::vector<lr_diagram> cappings(const lr_diagram& d) {
    const auto& top = d.top();
    std::vector<lr_diagram> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << top.size()); ++mask) {
        std::vector<std::size_t> kept;
        for (std::size_t k = 0; k < top.size(); ++k)
            if (mask & (std::size_t{1} << k)) kept.push_back(top[k]);
        out.emplace_back(d.blocks(), kept, d.chi(), d.omega());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

/// True iff fine partitions coarse into intervals: the fine blocks lying
/// inside `coarse` must partition it into runs of consecutive entries of its
/// sorted node list.
inline bool interval_decomposes(const std::vector<std::size_t>& coarse,
                                const std::vector<int>& fine_labels) {
    int prev = -1;
    std::vector<int> seen;
    for (auto node : coarse) {
        int lab = fine_labels[node];
        if (lab != prev) {
            if (std::find(seen.begin(), seen.end(), lab) != seen.end()) return false;
            seen.push_back(lab);
            prev = lab;
        }
    }
    return true;
}

}  // namespace detail

/// coarse >=_lat fine: fine is obtained by cutting spines of coarse between
/// ribs.  A cut top spine stays with the piece holding its minimal node, so
/// top(fine) is exactly the set of those pieces.
inline bool geq_lat(const lr_diagram& coarse, const lr_diagram& fine) {
    if (!(coarse.chi() == fine.chi()) || !(coarse.omega() == fine.omega())) return false;
    const std::size_t n = coarse.n();
    auto fine_lab = block_labels(fine.blocks(), n);
    auto coarse_lab = block_labels(coarse.blocks(), n);
    // every fine block inside one coarse block, cut into intervals
    for (const auto& b : fine.blocks())
        for (auto i : b)
            if (coarse_lab[i] != coarse_lab[b.front()]) return false;
    for (std::size_t cb = 0; cb < coarse.blocks().size(); ++cb)
        if (!detail::interval_decomposes(coarse.blocks()[cb], fine_lab)) return false;
    // the forced top set of the refinement
    std::set<int> forced;
    for (auto t : coarse.top()) forced.insert(fine_lab[coarse.blocks()[t].front()]);
    std::set<int> actual;
    for (auto t : fine.top()) actual.insert(fine_lab[fine.blocks()[t].front()]);
    return forced == actual;
}

/// coarse >=_cap fine: same partition, top(fine) a subset of top(coarse).
inline bool geq_cap(const lr_diagram& coarse, const lr_diagram& fine) {
    if (!(coarse.chi() == fine.chi()) || !(coarse.omega() == fine.omega())) return false;
    if (coarse.blocks() != fine.blocks()) return false;
    auto ct = coarse.top_node_sets();
    for (const auto& s : fine.top_node_sets())
        if (!ct.count(s)) return false;
    return true;
}

/// full >=_latcap d: some lateral refinement of full caps to d.  The
/// intermediate is unique — its partition is d's and its top set is forced by
/// full's — so the test reduces to: d's partition laterally refines full's,
/// and every top block of d holds the minimal node of a top block of full.
inline bool geq_latcap(const lr_diagram& full, const lr_diagram& d) {
    if (!(full.chi() == d.chi()) || !(full.omega() == d.omega())) return false;
    const std::size_t n = full.n();
    auto d_lab = block_labels(d.blocks(), n);
    auto full_lab = block_labels(full.blocks(), n);
    for (const auto& b : d.blocks())
        for (auto i : b)
            if (full_lab[i] != full_lab[b.front()]) return false;
    for (const auto& v : full.blocks())
        if (!detail::interval_decomposes(v, d_lab)) return false;
    std::set<int> forced;  // top labels of the unique intermediate refinement
    for (auto t : full.top()) forced.insert(d_lab[full.blocks()[t].front()]);
    for (auto t : d.top())
        if (!forced.count(d_lab[d.blocks()[t].front()])) return false;
    return true;
}

/// C_D over a pre-enumerated LR(chi, omega); zero when D is not a lateral
/// refinement of any diagram with the same top count.
inline long coefficient_c(const lr_diagram& d, const std::vector<lr_diagram>& lr_all) {
    long sum = 0;
    for (const auto& full : lr_all) {
        if (full.num_top() != d.num_top()) continue;
        if (!geq_lat(full, d)) continue;
        sum += ((d.weight() - full.weight()) % 2 == 0) ? 1 : -1;
    }
    return sum;
}

struct cprime_result {
    bool in_latcap;
    long value;
};

/// Closed-form C'_D = sum over D' in LR(chi, omega) with D' >=_latcap D of
/// (-1)^(|D| - |D'|); in_latcap reports whether any such D' exists.
inline cprime_result coefficient_cprime_checked(const lr_diagram& d,
                                                const std::vector<lr_diagram>& lr_all) {
    long sum = 0;
    bool any = false;
    for (const auto& full : lr_all) {
        if (!geq_latcap(full, d)) continue;
        any = true;
        sum += ((d.weight() - full.weight()) % 2 == 0) ? 1 : -1;
    }
    return {any, sum};
}

inline long coefficient_cprime(const lr_diagram& d, const std::vector<lr_diagram>& lr_all) {
    auto r = coefficient_cprime_checked(d, lr_all);
    if (!r.in_latcap)
        throw precondition_error("diagram is not in LR^latcap(chi, omega)");
    return r.value;
}

/// LR^latcap(chi, omega): close LR under lateral refinement, then capping.
inline std::vector<lr_diagram> enumerate_latcap(const chi_map& chi, const omega_map& omega,
                                                std::size_t cap = default_lr_cap) {
    auto lr_all = enumerate_lr(chi, omega, cap);
    std::set<lr_diagram> out;
    for (const auto& d : lr_all)
        for (const auto& r : lateral_refinements(d))
            for (const auto& c : cappings(r)) out.insert(c);
    return {out.begin(), out.end()};
}

/// phi_D: psi of the subword on every block whose spine stays short, phi of
/// the subword on every block reaching the top.
inline rational phi_d(const lr_diagram& d, const two_state_distribution& dist, const word_t& w) {
    if (w.size() != d.n()) throw precondition_error("word length must match the diagram");
    rational prod = 1;
    for (std::size_t b = 0; b < d.blocks().size() && prod != 0; ++b) {
        word_t sub;
        for (auto i : d.blocks()[b]) sub.push_back(w[i]);
        prod *= d.is_top(b) ? dist.phi(sub) : dist.psi(sub);
    }
    return prod;
}

/// Both sides of the lateral-cut / Möbius identity on LR_0:
///   sum_{sigma in LR_0(chi, omega), sigma >=_lat pi} (-1)^(|pi| - |sigma|)
///     = sum_{pi <= sigma <= omega} mu_BNC(pi, sigma).
/// Returns their equality; pi must refine omega.
inline bool mobius_lateral_identity(const bnc_partition& pi, const omega_map& omega,
                                    std::size_t cap = default_lr_cap) {
    const std::size_t n = pi.n();
    auto olab = [&](std::size_t i) { return omega[i]; };
    for (const auto& b : pi.blocks())
        for (auto i : b)
            if (olab(i) != olab(b.front()))
                throw precondition_error("pi must refine omega");
    lr_diagram pid(pi.blocks(), {}, pi.chi(), omega);
    rational lhs = 0;
    for (const auto& sigma : enumerate_lr(pi.chi(), omega, cap)) {
        if (sigma.num_top() != 0) continue;
        if (!geq_lat(sigma, pid)) continue;
        lhs += ((pid.weight() - sigma.weight()) % 2 == 0) ? 1 : -1;
    }
    rational rhs = 0;
    for (const auto& sigma : enumerate_bnc(pi.chi(), cap)) {
        if (!pi.leq(sigma)) continue;
        bool mono = true;
        for (const auto& b : sigma.blocks())
            for (auto i : b)
                if (olab(i) != olab(b.front())) mono = false;
        if (!mono) continue;
        rhs += mobius_bnc(pi, sigma, cap);
    }
    return lhs == rhs;
}

}  // namespace cbifree
