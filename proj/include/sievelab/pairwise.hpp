#pragma once

#include <cstddef>
#include <complex>
#include <vector>

namespace sievelab {

// Pairwise reduction whose tree shape depends only on the element count.
// Every floating accumulation in this project goes through it: parallel
// kernels fill a term buffer (each slot independent of scheduling) and then
// reduce with this fixed shape, so results are bit-identical for any thread
// count. Error growth is O(log n) versus O(n) for a running sum.
template <class T>
T pairwise_sum(const T* v, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

} // namespace sievelab
