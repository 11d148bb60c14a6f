#pragma once

// Moments, cumulants and Chebyshev-Hermite polynomials.

#include <cmath>
#include <string>
#include <vector>

#include "edgeworth/combinatorics.hpp"
#include "edgeworth/errors.hpp"
#include "edgeworth/poly.hpp"

namespace edgeworth {

namespace detail {

inline void check_order(std::size_t size, const char* who) {
    if (size < 1) throw ArityError(std::string(who) + ": need at least one entry");
    if (size > static_cast<std::size_t>(kMaxFaaDiBrunoOrder))
        throw BoundsError(std::string(who) + ": order above " + std::to_string(kMaxFaaDiBrunoOrder));
}

}  // namespace detail

// Raw moments alpha_k = E X^k for k = 1..m (1-based accessor).
class MomentVector {
public:
    MomentVector() = default;
    explicit MomentVector(std::vector<double> alpha) : alpha_(std::move(alpha)) {}

    int order() const { return static_cast<int>(alpha_.size()); }
    double alpha(int k) const {
        if (k < 1 || k > order()) throw BoundsError("MomentVector::alpha: index " + std::to_string(k));
        return alpha_[static_cast<std::size_t>(k - 1)];
    }
    const std::vector<double>& values() const { return alpha_; }
    double variance() const { return alpha(2) - alpha(1) * alpha(1); }

private:
    std::vector<double> alpha_;
};

// Cumulants gamma_k for k = 1..m (1-based accessor).
class CumulantVector {
public:
    CumulantVector() = default;
    explicit CumulantVector(std::vector<double> gamma) : gamma_(std::move(gamma)) {}

    // Builds a vector with gamma_1 = 0, gamma_2 = 1 followed by gamma_3.. given.
    static CumulantVector standardized_from_higher(const std::vector<double>& higher) {
        std::vector<double> g{0.0, 1.0};
        g.insert(g.end(), higher.begin(), higher.end());
        return CumulantVector(std::move(g));
    }

    int order() const { return static_cast<int>(gamma_.size()); }
    double gamma(int k) const {
        if (k < 1 || k > order()) throw BoundsError("CumulantVector::gamma: index " + std::to_string(k));
        return gamma_[static_cast<std::size_t>(k - 1)];
    }
    const std::vector<double>& values() const { return gamma_; }

    // Extended-precision copy kept by cumulants_from_moments, so that the
    // inverse map does not inherit the rounding of large high-order cumulants.
    static CumulantVector with_extended(std::vector<long double> g) {
        CumulantVector c(std::vector<double>(g.begin(), g.end()));
        c.extended_ = std::move(g);
        return c;
    }
    const std::vector<long double>& extended() const { return extended_; }

    bool is_standardized(double tol = 1e-12) const {
        return order() >= 2 && std::abs(gamma_[0]) <= tol && std::abs(gamma_[1] - 1.0) <= tol;
    }
    void require_standardized(const char* who) const {
        if (!is_standardized())
            throw PreconditionError(std::string(who) + ": cumulants must satisfy gamma_1 = 0, gamma_2 = 1");
    }

private:
    std::vector<double> gamma_;
    std::vector<long double> extended_;
};

// gamma_p = p! sum (-1)^{j-1} (j-1)! prod_r (1/k_r!) (alpha_r / r!)^{k_r}
// over weighted partitions of p, with j the number of parts.
inline CumulantVector cumulants_from_moments(const MomentVector& moments) {
    detail::check_order(moments.values().size(), "cumulants_from_moments");
    const int m = moments.order();

    // Derivatives of log at y = 1: z^{(j)} = (-1)^{j-1} (j-1)!.
    // Extended precision: the alternating sum cancels heavily at high order.
    std::vector<long double> outer(static_cast<std::size_t>(m) + 1, 0.0L);
    for (int j = 1; j <= m; ++j)
        outer[static_cast<std::size_t>(j)] = ((j % 2) ? 1.0L : -1.0L) * static_cast<long double>(factorial(j - 1));
    std::vector<long double> inner{1.0L};
    inner.insert(inner.end(), moments.values().begin(), moments.values().end());

    std::vector<long double> gamma(static_cast<std::size_t>(m));
    for (int p = 1; p <= m; ++p) gamma[static_cast<std::size_t>(p - 1)] = faa_di_bruno(outer, inner, p);
    return CumulantVector::with_extended(std::move(gamma));
}

// Inverse map: alpha_p is the complete Bell polynomial in gamma_1..gamma_p.
inline MomentVector moments_from_cumulants(const CumulantVector& cumulants) {
    detail::check_order(cumulants.values().size(), "moments_from_cumulants");
    const int m = cumulants.order();
    // All derivatives of exp at log v(0) = 0 equal 1.
    std::vector<long double> outer(static_cast<std::size_t>(m) + 1, 1.0L);
    std::vector<long double> inner{0.0L};
    if (cumulants.extended().size() == cumulants.values().size())
        inner.insert(inner.end(), cumulants.extended().begin(), cumulants.extended().end());
    else
        inner.insert(inner.end(), cumulants.values().begin(), cumulants.values().end());

    std::vector<double> alpha(static_cast<std::size_t>(m));
    for (int p = 1; p <= m; ++p)
        alpha[static_cast<std::size_t>(p - 1)] = static_cast<double>(faa_di_bruno(outer, inner, p));
    return MomentVector(std::move(alpha));
}

inline constexpr int kMaxHermiteOrder = 64;

// Probabilists' Hermite polynomial: H_k(x) e^{-x^2/2} = (-1)^k d^k/dx^k e^{-x^2/2}.
inline Poly hermite(int k) {
    if (k < 0 || k > kMaxHermiteOrder)
        throw BoundsError("hermite: k must lie in [0, 64], got " + std::to_string(k));
    Poly prev{1.0};
    if (k == 0) return prev;
    Poly cur{0.0, 1.0};
    const Poly x{0.0, 1.0};
    for (int j = 1; j < k; ++j) {
        Poly next = x * cur - static_cast<double>(j) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// H_0(x)..H_kmax(x) by the three-term recurrence H_{k+1} = x H_k - k H_{k-1}.
inline std::vector<double> hermite_values(int kmax, double x) {
    if (kmax < 0 || kmax > kMaxHermiteOrder) throw BoundsError("hermite_values: order out of range");
    std::vector<double> h(static_cast<std::size_t>(kmax) + 1);
    h[0] = 1.0;
    if (kmax >= 1) h[1] = x;
    for (int k = 1; k < kmax; ++k)
        h[static_cast<std::size_t>(k + 1)] = x * h[static_cast<std::size_t>(k)] - k * h[static_cast<std::size_t>(k - 1)];
    return h;
}

}  // namespace edgeworth
