#pragma once

// Gaussian quadrature rules (Legendre, Hermite, Jacobi, Laguerre) computed by
// Newton iteration on the three-term recurrences, and composite integrators
// built on top of them. Rules are cached per (family, n, parameters).

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "edgeworth/errors.hpp"

namespace edgeworth::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail {

inline constexpr int kMaxNewton = 100;
inline constexpr double kNewtonTol = 3e-15;

inline Rule legendre(int n) {
    Rule r{std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < kNewtonTol) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

// Physicists' Hermite nodes (weight e^{-x^2}) via orthonormal recurrence,
// then rescaled to the weight e^{-x^2/2}.
inline Rule hermite(int n) {
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    std::vector<double> x(n), w(n);
    double z = 0.0;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= kNewtonTol * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericError("gauss_hermite: Newton iteration did not converge");
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
    }
    Rule r{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        r.x[i] = std::sqrt(2.0) * x[n - 1 - i];
        r.w[i] = std::sqrt(2.0) * w[n - 1 - i];
    }
    return r;
}

// Weight (1-x)^a (1+x)^b on [-1, 1].
inline Rule jacobi(int n, double a, double b) {
    std::vector<double> x(n), w(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            const double an = a / n, bn = b / n;
            const double r1 = (1.0 + a) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
            const double r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if (i == 1) {
            const double r1 = (4.1 + a) / ((1.0 + a) * (1.0 + 0.156 * a));
            const double r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * a) / n;
            const double r3 = 1.0 + 0.012 * b * (1.0 + 0.25 * std::abs(a)) / n;
            z -= (1.0 - z) * r1 * r2 * r3;
        } else if (i == 2) {
            const double r1 = (1.67 + 0.28 * a) / (1.0 + 0.37 * a);
            const double r2 = 1.0 + 0.22 * (n - 8.0) / n;
            const double r3 = 1.0 + 8.0 * b / ((6.28 + b) * n * n);
            z -= (x[0] - z) * r1 * r2 * r3;
        } else if (i == n - 2) {
            const double r1 = (1.0 + 0.235 * b) / (0.766 + 0.119 * b);
            const double r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
            const double r3 = 1.0 / (1.0 + 20.0 * a / ((7.5 + a) * n * n));
            z += (z - x[static_cast<std::size_t>(n - 4)]) * r1 * r2 * r3;
        } else if (i == n - 1) {
            const double r1 = (1.0 + 0.37 * b) / (1.67 + 0.28 * b);
            const double r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
            const double r3 = 1.0 / (1.0 + 8.0 * a / ((6.28 + a) * n * n));
            z += (z - x[static_cast<std::size_t>(n - 3)]) * r1 * r2 * r3;
        } else {
            z = 3.0 * x[static_cast<std::size_t>(i - 1)] - 3.0 * x[static_cast<std::size_t>(i - 2)] +
                x[static_cast<std::size_t>(i - 3)];
        }
        const double alfbet = a + b;
        double pp = 0.0, p2 = 0.0, temp = 0.0;
        bool converged = false;
        for (int it = 0; it < kMaxNewton; ++it) {
            temp = 2.0 + alfbet;
            double p1 = (a - b + temp * z) / 2.0;
            p2 = 1.0;
            for (int j = 2; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                temp = 2 * j + alfbet;
                const double aa = 2 * j * (j + alfbet) * (temp - 2.0);
                const double bb = (temp - 1.0) * (a * a - b * b + temp * (temp - 2.0) * z);
                const double cc = 2.0 * (j - 1 + a) * (j - 1 + b) * temp;
                p1 = (bb * p2 - cc * p3) / aa;
            }
            pp = (n * (a - b - temp * z) * p1 + 2.0 * (n + a) * (n + b) * p2) / (temp * (1.0 - z * z));
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= kNewtonTol) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericError("gauss_jacobi: Newton iteration did not converge");
        x[i] = z;
        w[i] = std::exp(std::lgamma(a + n) + std::lgamma(b + n) - std::lgamma(n + 1.0) -
                        std::lgamma(n + alfbet + 1.0)) *
               temp * std::pow(2.0, alfbet) / (pp * p2);
    }
    // Nodes come out in decreasing order.
    Rule r{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        r.x[i] = x[n - 1 - i];
        r.w[i] = w[n - 1 - i];
    }
    return r;
}

// Weight x^a e^{-x} on [0, inf).
inline Rule laguerre(int n, double a) {
    Rule r{std::vector<double>(n), std::vector<double>(n)};
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            z = (1.0 + a) * (3.0 + 0.92 * a) / (1.0 + 2.4 * n + 1.8 * a);
        else if (i == 1)
            z += (15.0 + 6.25 * a) / (1.0 + 0.9 * a + 2.5 * n);
        else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * a / (1.0 + 3.5 * ai)) *
                 (z - r.x[static_cast<std::size_t>(i - 2)]) / (1.0 + 0.3 * a);
        }
        double pp = 0.0, p2 = 0.0;
        bool converged = false;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = 1.0;
            p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1 + a - z) * p2 - (j + a) * p3) / (j + 1);
            }
            pp = (n * p1 - (n + a) * p2) / z;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= kNewtonTol * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericError("gauss_laguerre: Newton iteration did not converge");
        r.x[i] = z;
        r.w[i] = -std::exp(std::lgamma(a + n) - std::lgamma(static_cast<double>(n))) / (pp * n * p2);
    }
    return r;
}

using Key = std::tuple<char, int, double, double>;

template <typename Make>
const Rule& cached(const Key& key, Make make) {
    static std::mutex mu;
    static std::map<Key, Rule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make()).first;
    return it->second;
}

inline void check_nodes(int n, const char* who) {
    if (n < 1 || n > 512) throw BoundsError(std::string(who) + ": node count must lie in [1, 512]");
}

}  // namespace detail

// Weight 1 on [-1, 1].
inline const Rule& gauss_legendre(int n) {
    detail::check_nodes(n, "gauss_legendre");
    return detail::cached({'L', n, 0.0, 0.0}, [n] { return detail::legendre(n); });
}

// Weight e^{-x^2/2} on the real line; weights sum to sqrt(2 pi).
inline const Rule& gauss_hermite(int n) {
    detail::check_nodes(n, "gauss_hermite");
    return detail::cached({'H', n, 0.0, 0.0}, [n] { return detail::hermite(n); });
}

// Weight (1-x)^a (1+x)^b on [-1, 1], a, b > -1.
inline const Rule& gauss_jacobi(int n, double a, double b) {
    detail::check_nodes(n, "gauss_jacobi");
    if (!(a > -1.0) || !(b > -1.0)) throw PreconditionError("gauss_jacobi: exponents must exceed -1");
    return detail::cached({'J', n, a, b}, [=] { return detail::jacobi(n, a, b); });
}

// Weight x^a e^{-x} on [0, inf), a > -1.
inline const Rule& gauss_laguerre(int n, double a = 0.0) {
    detail::check_nodes(n, "gauss_laguerre");
    if (!(a > -1.0)) throw PreconditionError("gauss_laguerre: exponent must exceed -1");
    return detail::cached({'G', n, a, 0.0}, [=] { return detail::laguerre(n, a); });
}

// Fixed-order Gauss-Legendre on [a, b].
template <typename F>
auto legendre_panel(F&& f, double a, double b, int nodes = 32) {
    const Rule& r = gauss_legendre(nodes);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    using R = decltype(f(a));
    R acc{};
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
    return h * acc;
}

// Equal panels of Gauss-Legendre on [a, b].
template <typename F>
auto composite(F&& f, double a, double b, int panels, int nodes = 32) {
    using R = decltype(f(a));
    R acc{};
    const double step = (b - a) / panels;
    for (int p = 0; p < panels; ++p) acc += legendre_panel(f, a + p * step, a + (p + 1) * step, nodes);
    return acc;
}

// Panels over consecutive breakpoints.
template <typename F>
auto over_breaks(F&& f, const std::vector<double>& breaks, int nodes = 32) {
    using R = decltype(f(breaks.front()));
    R acc{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) acc += legendre_panel(f, breaks[i], breaks[i + 1], nodes);
    return acc;
}

// Breakpoints 0 < x0 r^0 < x0 r^1 < ... up to b, plus the origin; for
// integrands with an integrable singularity or a kink at the left end.
inline std::vector<double> graded_breaks(double a, double b, double first = 1e-8, double ratio = 2.0) {
    std::vector<double> br{a};
    double w = first;
    while (a + w < b) {
        br.push_back(a + w);
        w *= ratio;
    }
    br.push_back(b);
    return br;
}

// Adaptive Gauss-Legendre: bisect until a panel agrees with its two halves.
template <typename F>
auto adaptive(F&& f, double a, double b, double tol = 1e-12, int max_depth = 40, int nodes = 16) {
    using R = decltype(f(a));
    struct Rec {
        F& f;
        double tol;
        int nodes;
        R operator()(double lo, double hi, R whole, int depth) {
            const double mid = 0.5 * (lo + hi);
            const R left = legendre_panel(f, lo, mid, nodes);
            const R right = legendre_panel(f, mid, hi, nodes);
            const R sum = left + right;
            if (std::abs(sum - whole) <= tol || depth == 0) {
                if (depth == 0 && std::abs(sum - whole) > 100 * tol)
                    throw NumericError("quad::adaptive: recursion depth exhausted on [" + num_text(lo) +
                                       ", " + num_text(hi) + "]");
                return sum;
            }
            return (*this)(lo, mid, left, depth - 1) + (*this)(mid, hi, right, depth - 1);
        }
    };
    Rec rec{f, tol, nodes};
    return rec(a, b, legendre_panel(f, a, b, nodes), max_depth);
}

}  // namespace edgeworth::quad
