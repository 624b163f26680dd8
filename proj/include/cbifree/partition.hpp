#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace cbifree {

/// Blocks of a set partition of {0..n-1}.  Canonical form: each block sorted
/// increasingly, blocks sorted by minimum.
using blocks_t = std::vector<std::vector<std::size_t>>;

inline blocks_t canonical_blocks(blocks_t blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return blocks;
}

/// Block label of each element, numbered by first occurrence; doubles as a
/// canonical key for maps and equality.
inline std::vector<int> block_labels(const blocks_t& blocks, std::size_t n) {
    std::vector<int> lab(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (auto i : blocks[b]) lab[i] = static_cast<int>(b);
    return lab;
}

inline blocks_t blocks_from_labels(const std::vector<int>& lab) {
    int m = *std::max_element(lab.begin(), lab.end()) + 1;
    blocks_t blocks(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < lab.size(); ++i) blocks[static_cast<std::size_t>(lab[i])].push_back(i);
    return canonical_blocks(std::move(blocks));
}

/// p <= q in refinement order: every block of p is contained in a block of q.
inline bool refines(const blocks_t& p, const blocks_t& q, std::size_t n) {
    auto ql = block_labels(q, n);
    for (const auto& b : p) {
        int lab = ql[b.front()];
        for (auto i : b)
            if (ql[i] != lab) return false;
    }
    return true;
}

/// Set-partition join (transitive closure of the union) via union-find.
inline blocks_t join_blocks(const blocks_t& p, const blocks_t& q, std::size_t n) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (const auto* part : {&p, &q})
        for (const auto& blk : *part)
            for (std::size_t i = 1; i < blk.size(); ++i) unite(blk[0], blk[i]);
    blocks_t out;
    std::vector<int> where(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = find(i);
        if (where[r] < 0) {
            where[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(where[r])].push_back(i);
    }
    return canonical_blocks(std::move(out));
}

/// Crossing test in a relabelled line: pos[i] is the rank of node i.  Two
/// blocks cross iff their merged rank trace alternates V W V W, i.e. shows at
/// least three label changes.
inline bool is_noncrossing_under(const blocks_t& blocks, const std::vector<std::size_t>& pos) {
    for (std::size_t v = 0; v < blocks.size(); ++v)
        for (std::size_t w = v + 1; w < blocks.size(); ++w) {
            std::vector<std::pair<std::size_t, int>> merged;
            merged.reserve(blocks[v].size() + blocks[w].size());
            for (auto i : blocks[v]) merged.emplace_back(pos[i], 0);
            for (auto i : blocks[w]) merged.emplace_back(pos[i], 1);
            std::sort(merged.begin(), merged.end());
            int changes = 0;
            for (std::size_t k = 1; k < merged.size(); ++k)
                if (merged[k].second != merged[k - 1].second) ++changes;
            if (changes >= 3) return false;
        }
    return true;
}

namespace detail {

inline void nc_rec(const std::vector<std::size_t>& elems, blocks_t& acc,
                   std::vector<blocks_t>& out) {
    if (elems.empty()) {
        out.push_back(canonical_blocks(acc));
        return;
    }
    // choose the block of the first element among the remaining ones; the
    // chosen elements split the rest into independent segments
    const std::size_t m = elems.size();
    std::vector<std::size_t> pick;
    // iterate over subsets of {1..m-1} as sorted index lists, first element fixed
    std::vector<std::size_t> idx;
    auto emit = [&]() {
        std::vector<std::size_t> block{elems[0]};
        for (auto i : idx) block.push_back(elems[i]);
        acc.push_back(block);
        // recurse on each gap segment independently, non-crossing within segments
        std::vector<std::size_t> bounds{0};
        for (auto i : idx) bounds.push_back(i);
        bounds.push_back(m);
        // segments: (bounds[k], bounds[k+1]) exclusive
        // process them jointly by one recursive call per segment
        std::vector<std::vector<std::size_t>> segs;
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
            std::vector<std::size_t> seg;
            for (std::size_t j = bounds[k] + 1; j < bounds[k + 1]; ++j) seg.push_back(elems[j]);
            if (!seg.empty()) segs.push_back(std::move(seg));
        }
        // cartesian recursion over segments
        std::vector<std::vector<blocks_t>> per_seg;
        per_seg.reserve(segs.size());
        for (auto& seg : segs) {
            std::vector<blocks_t> sub;
            blocks_t tmp;
            nc_rec(seg, tmp, sub);
            per_seg.push_back(std::move(sub));
        }
        std::vector<std::size_t> choice(per_seg.size(), 0);
        while (true) {
            blocks_t whole = acc;
            for (std::size_t k = 0; k < per_seg.size(); ++k)
                for (const auto& b : per_seg[k][choice[k]]) whole.push_back(b);
            out.push_back(canonical_blocks(whole));
            std::size_t k = 0;
            for (; k < per_seg.size(); ++k) {
                if (++choice[k] < per_seg[k].size()) break;
                choice[k] = 0;
            }
            if (k == per_seg.size()) break;
        }
        acc.pop_back();
    };
    // enumerate all sorted subsets of {1..m-1}
    std::vector<std::size_t> sub;
    auto rec_subset = [&](auto&& self, std::size_t from) -> void {
        idx = sub;
        emit();
        for (std::size_t i = from; i < m; ++i) {
            sub.push_back(i);
            self(self, i + 1);
            sub.pop_back();
        }
    };
    rec_subset(rec_subset, 1);
}

}  // namespace detail

/// All non-crossing partitions of {0..n-1} in the natural order (Catalan(n) many).
inline std::vector<blocks_t> enumerate_noncrossing(std::size_t n) {
    std::vector<std::size_t> elems(n);
    std::iota(elems.begin(), elems.end(), std::size_t{0});
    std::vector<blocks_t> out;
    blocks_t acc;
    detail::nc_rec(elems, acc, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace cbifree
