#pragma once

// Weighted integer partitions and the Faa di Bruno composition rule.
//
// A weighted partition of k is a tuple (p_1, ..., p_k) of non-negative
// integers with p_1 + 2 p_2 + ... + k p_k = k. Every partition-indexed sum in
// the expansion machinery (cumulants, P_k, a_k, q_k) runs over these tuples.

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "edgeworth/errors.hpp"

namespace edgeworth {

using u128 = unsigned __int128;

inline constexpr int kMaxPartitionOrder = 32;
inline constexpr int kMaxFaaDiBrunoOrder = 20;

struct WeightedPartition {
    // counts[r - 1] = p_r, the multiplicity of part r.
    std::vector<int> counts;

    int order() const {
        int k = 0;
        for (std::size_t r = 0; r < counts.size(); ++r) k += static_cast<int>(r + 1) * counts[r];
        return k;
    }
    // j = p_1 + ... + p_k, the number of parts.
    int parts() const { return std::accumulate(counts.begin(), counts.end(), 0); }

    friend bool operator==(const WeightedPartition&, const WeightedPartition&) = default;
};

inline u128 factorial_exact(int n) {
    if (n < 0 || n > 33) throw BoundsError("factorial_exact: n out of range [0, 33]");
    u128 f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<u128>(i);
    return f;
}

inline double factorial(int n) { return static_cast<double>(factorial_exact(n)); }

inline double to_double(u128 v) { return static_cast<double>(v); }

namespace detail {

inline void enumerate_partitions_rec(int r, int k, int remaining, std::vector<int>& counts,
                                     std::vector<WeightedPartition>& out) {
    if (r == k) {
        if (remaining % k == 0) {
            counts[k - 1] = remaining / k;
            out.push_back(WeightedPartition{counts});
            counts[k - 1] = 0;
        }
        return;
    }
    for (int c = 0; c * r <= remaining; ++c) {
        counts[r - 1] = c;
        enumerate_partitions_rec(r + 1, k, remaining - c * r, counts, out);
    }
    counts[r - 1] = 0;
}

}  // namespace detail

// All tuples (p_1..p_k) with sum r p_r = k, in ascending lexicographic order.
inline std::vector<WeightedPartition> enumerate_weighted_partitions(int k) {
    if (k < 1 || k > kMaxPartitionOrder)
        throw BoundsError("enumerate_weighted_partitions: k must lie in [1, " +
                          std::to_string(kMaxPartitionOrder) + "], got " + std::to_string(k));
    std::vector<WeightedPartition> out;
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    detail::enumerate_partitions_rec(1, k, k, counts, out);
    return out;
}

// Number of set partitions of {1..k} whose block sizes follow `part`:
// k! / prod_r (p_r! (r!)^{p_r}). Exact for k <= 32.
inline u128 set_partition_count(const WeightedPartition& part) {
    const int k = part.order();
    u128 num = factorial_exact(k);
    u128 den = 1;
    for (std::size_t r = 0; r < part.counts.size(); ++r) {
        const int c = part.counts[r];
        if (c == 0) continue;
        den *= factorial_exact(c);
        const u128 rf = factorial_exact(static_cast<int>(r + 1));
        for (int i = 0; i < c; ++i) den *= rf;
    }
    return num / den;
}

// d^p/dt^p z(y(t)) from the derivatives of z at y(t) and of y at t.
//
// outer[j] = z^{(j)}(y(t)) and inner[r] = y^{(r)}(t), both starting at the
// zeroth derivative, so each needs at least p + 1 entries.
template <typename T>
T faa_di_bruno(std::span<const T> outer, std::span<const T> inner, int p) {
    if (p < 1 || p > kMaxFaaDiBrunoOrder)
        throw BoundsError("faa_di_bruno: p must lie in [1, " + std::to_string(kMaxFaaDiBrunoOrder) +
                          "], got " + std::to_string(p));
    const auto need = static_cast<std::size_t>(p) + 1;
    if (outer.size() < need || inner.size() < need)
        throw ArityError("faa_di_bruno: need " + std::to_string(need) +
                         " derivatives (including order 0) of both outer and inner functions");

    T total{};
    for (const auto& part : enumerate_weighted_partitions(p)) {
        T term = outer[static_cast<std::size_t>(part.parts())];
        for (std::size_t r = 0; r < part.counts.size(); ++r)
            for (int i = 0; i < part.counts[r]; ++i) term *= inner[r + 1];
        total += to_double(set_partition_count(part)) * term;
    }
    return total;
}

template <typename T>
T faa_di_bruno(const std::vector<T>& outer, const std::vector<T>& inner, int p) {
    return faa_di_bruno<T>(std::span<const T>(outer), std::span<const T>(inner), p);
}

}  // namespace edgeworth
