#pragma once

// Binomial smoothing of an unbounded density. Split rho = a p + b q at a
// threshold M (p = normalized part where rho <= M), expand
// rho^{*n} = sum_k C(n,k) a^k b^{n-k} p^{*k} * q^{*(n-k)}, drop the terms
// with k <= m + 1 (total weight beta_n) and renormalize.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "edgeworth/charfun.hpp"
#include "edgeworth/errors.hpp"
#include "edgeworth/grid.hpp"
#include "edgeworth/gridoracle.hpp"
#include "edgeworth/quadrature.hpp"

namespace edgeworth {

struct SmoothingDecomposition {
    double M = 0.0;
    double a = 1.0, b = 0.0;
    GridDensity rho;  // input, renormalized to unit mass
    GridDensity p_part, q_part;
    double c = 0.5;
    bool trivial = false;  // bounded input: b = 0, p = rho

    // max over the grid of |a p + b q - rho|.
    double reconstruction_error() const {
        double e = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i)
            e = std::max(e, std::abs(a * p_part.values[i] + b * q_part.values[i] - rho.values[i]));
        return e;
    }
};

// M is the smallest grid value with b = int_{rho > M} rho < c/2. With
// known_bounded set the split is trivial.
inline SmoothingDecomposition threshold_split(const GridDensity& rho_in, double c, bool known_bounded = false) {
    if (!(c > 0.0 && c < 1.0)) throw PreconditionError("threshold_split: c must lie in (0, 1)");
    const double mass = rho_in.mass();
    if (!(mass > 0.0)) throw PreconditionError("threshold_split: density has no mass");
    SmoothingDecomposition d;
    d.c = c;
    d.rho = rho_in;
    for (double& v : d.rho.values) v /= mass;
    const double h = d.rho.h;

    if (known_bounded) {
        d.trivial = true;
        d.M = d.rho.sup_abs();
        d.p_part = d.rho;
        d.q_part = GridDensity(h, d.rho.half);
        return d;
    }

    std::vector<double> sorted = d.rho.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double above = 0.0;
    std::size_t k = 0;
    while (k < sorted.size()) {
        // Mass of all values equal to sorted[k].
        std::size_t j = k;
        double tie = 0.0;
        while (j < sorted.size() && sorted[j] == sorted[k]) tie += sorted[j++] * h;
        if (above + tie >= 0.5 * c) break;
        above += tie;
        k = j;
    }
    if (k == 0 || k >= sorted.size())
        throw ResolutionError("threshold_split: no grid threshold gives 0 < b < c/2 (grid too coarse near the peak)");
    d.M = sorted[k];
    d.p_part = GridDensity(h, d.rho.half);
    d.q_part = GridDensity(h, d.rho.half);
    double high = 0.0;
    for (double v : d.rho.values)
        if (v > d.M) high += v * h;
    d.b = high;
    d.a = 1.0 - d.b;
    for (std::size_t i = 0; i < d.rho.size(); ++i) {
        const double v = d.rho.values[i];
        if (v > d.M)
            d.q_part.values[i] = v / d.b;
        else
            d.p_part.values[i] = v / d.a;
    }
    return d;
}

inline double binomial_weight(int n, int k, double a, double b) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c * std::pow(a, k) * std::pow(b, n - k);
}

// beta_n = sum_{k=0}^{m+1} C(n,k) a^k b^{n-k}.
inline double beta_n(int n, int m, double a, double b) {
    double s = 0.0;
    for (int k = 0; k <= std::min(m + 1, n); ++k) s += binomial_weight(n, k, a, b);
    return s;
}

// Smallest n_1 >= m + 2 with beta_n < c^n / 2 for every n in [n_1, n_max].
inline std::optional<int> first_rate_index(double a, double b, int m, double c, int n_max = 64) {
    std::optional<int> n1;
    for (int n = n_max; n >= m + 2; --n) {
        if (beta_n(n, m, a, b) < 0.5 * std::pow(c, n))
            n1 = n;
        else
            break;
    }
    return n1;
}

inline constexpr int kMaxSmoothingN = 64;

struct ModifiedDensityReport {
    int n = 0;
    double beta_n = 0.0;
    double tv_gap = 0.0;       // int |rho~_n - rho_n|
    double bound_2beta = 0.0;  // 2 beta_n
    double mass = 0.0;         // int rho~_n
    GridDensity rho_tilde;     // normalized coordinates, spacing h / sqrt(n)
};

// Convolution powers of p and q, built incrementally and shared across n.
class BinomialSmoother {
public:
    explicit BinomialSmoother(SmoothingDecomposition d, double L_max = 64.0)
        : d_(std::move(d)), L_max_(L_max) {}

    const SmoothingDecomposition& decomposition() const { return d_; }

    ModifiedDensityReport report(int n, int m) {
        if (m < 0) throw PreconditionError("modified_density: m must be non-negative");
        if (n < m + 2) throw PreconditionError("modified_density: need n >= m + 2");
        if (n > kMaxSmoothingN)
            throw BoundsError("modified_density: n = " + std::to_string(n) + " exceeds the cap of " +
                              std::to_string(kMaxSmoothingN) + " convolution factors");
        const double a = d_.a, b = d_.b;
        ModifiedDensityReport r;
        r.n = n;
        r.beta_n = beta_n(n, m, a, b);
        r.bound_2beta = 2.0 * r.beta_n;

        // Each k-term lives on its own grid; accumulate onto the widest.
        std::vector<std::pair<double, GridDensity>> kept, dropped;
        int half = 0;
        for (int k = 0; k <= n; ++k) {
            const double w = binomial_weight(n, k, a, b);
            if (w == 0.0) continue;
            GridDensity term = product(k, n - k);
            half = std::max(half, term.half);
            (k >= m + 2 ? kept : dropped).emplace_back(w, std::move(term));
        }
        GridDensity pn(d_.rho.h, half), rest(d_.rho.h, half);
        auto add = [half](GridDensity& into, double w, const GridDensity& g) {
            const int off = half - g.half;
            for (std::size_t i = 0; i < g.size(); ++i) into.values[i + static_cast<std::size_t>(off)] += w * g.values[i];
        };
        for (const auto& [w, g] : kept) add(pn, w, g);
        for (const auto& [w, g] : dropped) add(rest, w, g);

        const double scale = 1.0 / (1.0 - r.beta_n);
        double tv = 0.0, mass = 0.0;
        for (std::size_t i = 0; i < pn.size(); ++i) {
            const double tilde = pn.values[i] * scale;
            const double full = pn.values[i] + rest.values[i];
            tv += std::abs(tilde - full);
            mass += tilde;
        }
        r.tv_gap = tv * pn.h;
        r.mass = mass * pn.h;
        if (std::abs(r.mass - 1.0) > 1e-6)
            throw NumericError("modified_density: rho~_n integrates to " + num_text(r.mass));

        const double rn = std::sqrt(static_cast<double>(n));
        r.rho_tilde = GridDensity(pn.h / rn, half);
        for (std::size_t i = 0; i < pn.size(); ++i) r.rho_tilde.values[i] = pn.values[i] * scale * rn;
        return r;
    }

private:
    const GridDensity& power(std::vector<GridDensity>& cache, const GridDensity& base, int k) {
        if (cache.empty()) {
            GridDensity delta(base.h, 0);
            delta.values[0] = 1.0 / base.h;  // unit mass at the origin
            cache.push_back(std::move(delta));
        }
        while (static_cast<int>(cache.size()) <= k) cache.push_back(convolve(cache.back(), base, L_max_));
        const GridDensity& g = cache[static_cast<std::size_t>(k)];
        if (g.lost_mass > 1e-6)
            throw TruncationError("modified_density: convolution power lost mass " + num_text(g.lost_mass),
                                  g.lost_mass);
        return g;
    }

    GridDensity product(int k, int j) {
        const GridDensity& pk = power(p_pow_, d_.p_part, k);
        const GridDensity& qj = power(q_pow_, d_.q_part, j);
        if (k == 0) return qj;
        if (j == 0) return pk;
        return convolve(pk, qj, L_max_);
    }

    SmoothingDecomposition d_;
    double L_max_;
    std::vector<GridDensity> p_pow_, q_pow_;
};

inline ModifiedDensityReport modified_density(const SmoothingDecomposition& d, int n, int m, double L_max = 64.0) {
    BinomialSmoother s(d, L_max);
    return s.report(n, m);
}

struct TailIntegralReport {
    int n = 0;
    std::vector<double> T;
    std::vector<double> integral;  // int_{|t| >= T} |v_n(t)| dt
    double sigma2 = 0.0;           // fit log I = log A - sigma2 T^2
    double log_A = 0.0;
    // RMS of the log residuals over the spread of log I on the window.
    double fit_residual = 0.0;
    bool decreasing = true;
};

// 2 int_T^inf f(t) dt for a non-negative f decaying at infinity.
inline double ray_integral(const std::function<double(double)>& f, double T) {
    double total = 0.0, a = T, w = 0.5;
    int quiet = 0;
    while (quiet < 4) {
        const double p = quad::legendre_panel(f, a, a + w, 32);
        total += p;
        quiet = p <= 1e-16 * total ? quiet + 1 : 0;
        a += w;
        w = std::min(2.0 * w, 1e6);
        if (a > 1e12) throw NumericError("tail_integral_probe: integral does not converge");
    }
    return 2.0 * total;
}

// abs_vn(t, n) = |v_n(t)|; every T must satisfy 0 <= T <= sqrt(n).
inline std::vector<TailIntegralReport> tail_integral_probe(const std::function<double(double, int)>& abs_vn,
                                                           const std::vector<int>& n_list,
                                                           const std::vector<double>& T_list) {
    std::vector<TailIntegralReport> out;
    for (int n : n_list) {
        TailIntegralReport r;
        r.n = n;
        r.T = T_list;
        for (double T : T_list) {
            if (T < 0.0 || T > std::sqrt(static_cast<double>(n)))
                throw PreconditionError("tail_integral_probe: need 0 <= T <= sqrt(n)");
            r.integral.push_back(ray_integral([&](double t) { return abs_vn(t, n); }, T));
        }
        for (std::size_t i = 1; i < r.integral.size(); ++i)
            if (!(r.integral[i] < r.integral[i - 1])) r.decreasing = false;
        // Least squares of log I against T^2.
        const double k = static_cast<double>(T_list.size());
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < T_list.size(); ++i) {
            mx += T_list[i] * T_list[i] / k;
            my += std::log(r.integral[i]) / k;
        }
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < T_list.size(); ++i) {
            const double dx = T_list[i] * T_list[i] - mx;
            sxx += dx * dx;
            sxy += dx * (std::log(r.integral[i]) - my);
        }
        const double slope = sxx > 0 ? sxy / sxx : 0.0;
        r.sigma2 = -slope;
        r.log_A = my - slope * mx;
        double rss = 0.0, lo = std::log(r.integral.front()), hi = lo;
        for (std::size_t i = 0; i < T_list.size(); ++i) {
            const double li = std::log(r.integral[i]);
            const double res = li - (r.log_A + slope * T_list[i] * T_list[i]);
            rss += res * res;
            lo = std::min(lo, li);
            hi = std::max(hi, li);
        }
        r.fit_residual = hi > lo ? std::sqrt(rss / k) / (hi - lo) : 0.0;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<TailIntegralReport> tail_integral_probe(const DistributionModel& model, const std::vector<int>& n_list,
                                                           const std::vector<double>& T_list) {
    return tail_integral_probe([&](double t, int n) { return std::abs(v_n(model, t, n)); }, n_list, T_list);
}

}  // namespace edgeworth
