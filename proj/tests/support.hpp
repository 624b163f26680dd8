#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <cstdint>
#include <vector>

#include <map>

#include <cbifree/bnc.hpp>
#include <cbifree/chi.hpp>
#include <cbifree/cumulants.hpp>
#include <cbifree/lr.hpp>
#include <cbifree/random.hpp>
#include <cbifree/partition.hpp>
#include <cbifree/rational.hpp>

namespace testutil {

inline std::uint64_t catalan(unsigned n) {
    // C(n) = binom(2n, n) / (n+1)
    std::uint64_t c = 1;
    for (unsigned i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

/// Every set partition of {0..n-1}, by direct assignment enumeration.
inline std::vector<cbifree::blocks_t> all_set_partitions(std::size_t n) {
    std::vector<cbifree::blocks_t> out;
    std::vector<int> lab(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int maxlab) -> void {
        if (i == n) {
            out.push_back(cbifree::blocks_from_labels(lab));
            return;
        }
        for (int l = 0; l <= maxlab + 1; ++l) {
            lab[i] = l;
            self(self, i + 1, std::max(maxlab, l));
        }
    };
    rec(rec, 1, 0);  // element 0 is always labelled 0
    return out;
}

/// All chi maps of length n (2^n of them).
inline std::vector<cbifree::chi_map> all_chi_maps(std::size_t n) {
    std::vector<cbifree::chi_map> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<cbifree::face> f;
        for (std::size_t i = 0; i < n; ++i)
            f.push_back((mask >> i) & 1 ? cbifree::face::right : cbifree::face::left);
        out.emplace_back(std::move(f));
    }
    return out;
}

/// All omega maps [n] -> {0..num_colours-1}.
inline std::vector<cbifree::omega_map> all_omega_maps(std::size_t n, int num_colours) {
    std::vector<cbifree::omega_map> out;
    std::vector<int> cur(n, 0);
    for (;;) {
        out.push_back(cbifree::omega_map(cur));
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++cur[i] < num_colours) break;
            cur[i] = 0;
        }
        if (i == n) break;
    }
    return out;
}

/// Inner/outer classification of a non-crossing partition on the natural
/// line by a nesting scan, independent of the prec-order implementation.
/// Returns true for inner blocks, aligned with blocks() order.
inline std::vector<bool> inner_blocks_by_scan(const cbifree::blocks_t& blocks, std::size_t n) {
    std::vector<bool> inner(blocks.size(), false);
    for (std::size_t v = 0; v < blocks.size(); ++v) {
        auto lo = blocks[v].front(), hi = blocks[v].back();
        for (std::size_t w = 0; w < blocks.size() && !inner[v]; ++w) {
            if (w == v) continue;
            for (auto a : blocks[w])
                if (a < lo) {
                    for (auto b : blocks[w])
                        if (b > hi) {
                            inner[v] = true;
                            break;
                        }
                    break;
                }
        }
    }
    (void)n;
    return inner;
}

/// Free and c-free cumulants on the natural line via NC(n) and the inner/outer
/// scan; an oracle for the constant-chi specialization of the BNC machinery.
struct cfree_oracle {
    const cbifree::two_state_distribution& dist;
    std::map<cbifree::word_t, cbifree::rational> kmemo, cmemo;

    cbifree::rational free_cumulant(const cbifree::word_t& w) {
        if (auto it = kmemo.find(w); it != kmemo.end()) return it->second;
        cbifree::rational val = dist.psi(w);
        for (const auto& pi : cbifree::enumerate_noncrossing(w.size())) {
            if (pi.size() == 1) continue;
            cbifree::rational prod = 1;
            for (const auto& b : pi) {
                cbifree::word_t sub;
                for (auto i : b) sub.push_back(w[i]);
                prod *= free_cumulant(sub);
            }
            val -= prod;
        }
        kmemo.emplace(w, val);
        return val;
    }

    cbifree::rational cfree_cumulant(const cbifree::word_t& w) {
        if (auto it = cmemo.find(w); it != cmemo.end()) return it->second;
        cbifree::rational val = dist.phi(w);
        if (w.size() > 1) {
            for (const auto& pi : cbifree::enumerate_noncrossing(w.size())) {
                if (pi.size() == 1) continue;
                auto inner = inner_blocks_by_scan(pi, w.size());
                cbifree::rational prod = 1;
                for (std::size_t b = 0; b < pi.size(); ++b) {
                    cbifree::word_t sub;
                    for (auto i : pi[b]) sub.push_back(w[i]);
                    prod *= inner[b] ? free_cumulant(sub) : cfree_cumulant(sub);
                }
                val -= prod;
            }
        }
        cmemo.emplace(w, val);
        return val;
    }
};

/// C'_D for every diagram of LR^latcap(chi, omega) by the recursive
/// definition: starting from the largest top count,
///   C'_D = C_D - sum over cappable ancestors D' with more top spines of C'_{D'}.
/// Independent of the library's closed-form implementation.
inline std::map<cbifree::lr_diagram, long> recursive_cprime(const cbifree::chi_map& chi,
                                                            const cbifree::omega_map& omega) {
    using cbifree::lr_diagram;
    auto lr_all = cbifree::enumerate_lr(chi, omega);
    auto latcap = cbifree::enumerate_latcap(chi, omega);
    // C_D: zero unless D arises by lateral refinement alone
    auto c_of = [&](const lr_diagram& d) -> long {
        long sum = 0;
        for (const auto& full : lr_all) {
            if (full.num_top() != d.num_top()) continue;
            if (!cbifree::geq_lat(full, d)) continue;
            sum += ((d.weight() - full.weight()) % 2 == 0) ? 1 : -1;
        }
        return sum;
    };
    std::vector<std::size_t> order(latcap.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return latcap[a].num_top() > latcap[b].num_top();
    });
    // capping preserves the partition, so only same-partition diagrams interact
    std::map<cbifree::blocks_t, std::vector<std::pair<std::size_t, long>>> by_partition;
    std::map<lr_diagram, long> cprime;
    for (auto i : order) {
        const auto& d = latcap[i];
        long val = c_of(d);
        for (const auto& [j, cp] : by_partition[d.blocks()])
            if (latcap[j].num_top() > d.num_top() && cbifree::geq_cap(latcap[j], d)) val -= cp;
        by_partition[d.blocks()].emplace_back(i, val);
        cprime.emplace(d, val);
    }
    return cprime;
}

}  // namespace testutil
