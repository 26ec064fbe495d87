#pragma once

// Brute-force oracles used to pin expected values. Everything here is
// written independently of the library code paths it checks.

#include <cstdint>
#include <map>
#include <vector>

#include "redsched/designkit.hpp"

namespace oracles {

inline int overlap(const std::vector<int>& a, const std::vector<int>& b) {
    int c = 0;
    for (int x : a)
        for (int y : b)
            if (x == y) ++c;
    return c;
}

// Overlap histogram over all unordered pairs of the given blocks.
inline std::map<int, long long> pair_overlap_histogram(
    const std::vector<redsched::Block>& blocks) {
    std::map<int, long long> hist;
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            ++hist[overlap(blocks[i].members, blocks[j].members)];
    return hist;
}

// All d-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> all_subsets(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) cur[static_cast<size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = d - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

// Exact overlap distribution of two independent uniform d-subsets of an
// n-set: counts[k] over all ordered subset pairs, plus the pair total.
struct SubsetOverlapCounts {
    std::vector<long long> counts;  // index k = 0..d
    long long total = 0;
};

inline SubsetOverlapCounts uniform_subset_overlap_counts(int n, int d) {
    auto subsets = all_subsets(n, d);
    SubsetOverlapCounts r;
    r.counts.assign(static_cast<size_t>(d) + 1, 0);
    for (const auto& a : subsets)
        for (const auto& b : subsets) {
            ++r.counts[static_cast<size_t>(overlap(a, b))];
            ++r.total;
        }
    return r;
}

// Independent re-check of the perfect-difference property.
inline bool covers_all_differences_once(const std::vector<int>& residues, int n) {
    std::vector<int> hits(static_cast<size_t>(n), 0);
    for (int a : residues)
        for (int b : residues)
            if (a != b) ++hits[static_cast<size_t>(((a - b) % n + n) % n)];
    if (hits[0] != 0) return false;
    for (int r = 1; r < n; ++r)
        if (hits[static_cast<size_t>(r)] != 1) return false;
    return true;
}

}  // namespace oracles
