#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace graphqec {

/// All k-subsets of `pool` (taken in pool order), lexicographic by position.
template <class T>
std::vector<std::vector<T>> combinations(const std::vector<T>& pool, std::size_t k) {
    std::vector<std::vector<T>> out;
    if (k > pool.size()) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::vector<T> pick;
        pick.reserve(k);
        for (std::size_t i : idx) pick.push_back(pool[i]);
        out.push_back(std::move(pick));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace graphqec
