#pragma once

// Distribution models and characteristic-function-side quantities.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "edgeworth/cumulants.hpp"
#include "edgeworth/errors.hpp"
#include "edgeworth/expansion.hpp"

namespace edgeworth {

struct DistributionModel {
    std::string name;
    std::function<double(double)> density;
    std::function<double(double)> cdf;
    std::function<cplx(double)> charfn;
    // Continuous logarithm of charfn on |t| < log_radius; used for v_n.
    std::function<cplx(double)> log_charfn;
    double log_radius = std::numeric_limits<double>::infinity();
    // Non-increasing bound on |charfn(t)| in |t|.
    std::function<double(double)> envelope;
    MomentVector moments;
    double s_max = std::numeric_limits<double>::infinity();
    bool standardized = true;
    bool bounded_density = true;
    // Points where the density jumps or blows up.
    std::vector<double> breakpoints;
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();

    CumulantVector cumulants() const { return cumulants_from_moments(moments); }
    CumulantVector cumulants(int m) const {
        if (m > moments.order()) throw BoundsError("DistributionModel::cumulants: model " + name + " has " +
                                                   std::to_string(moments.order()) + " finite moments");
        std::vector<double> a(moments.values().begin(), moments.values().begin() + m);
        return cumulants_from_moments(MomentVector(std::move(a)));
    }

    // P(|X| > w) for w >= 0.
    double two_sided_tail(double w) const { return cdf(-w) + (1.0 - cdf(w)); }

    // Smallest w (to bisection accuracy) with P(|X| > w) <= eps.
    double tail_width(double eps) const {
        double lo = 0.0, hi = 1.0;
        while (two_sided_tail(hi) > eps) {
            hi *= 2.0;
            if (hi > 1e8) throw NumericError("tail_width: tail of " + name + " too heavy for eps");
        }
        for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (two_sided_tail(mid) > eps ? lo : hi) = mid;
        }
        return hi;
    }
};

namespace models {

inline DistributionModel gaussian() {
    DistributionModel d;
    d.name = "gaussian";
    d.density = std_normal_pdf;
    d.cdf = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
    d.charfn = [](double t) { return cplx(std::exp(-0.5 * t * t)); };
    d.log_charfn = [](double t) { return cplx(-0.5 * t * t); };
    d.envelope = [](double t) { return std::exp(-0.5 * t * t); };
    d.moments = moments_from_cumulants(CumulantVector({0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
    return d;
}

// log(sin x / x), accurate near 0.
inline double log_sinc(double x) {
    const double x2 = x * x;
    if (std::abs(x) < 0.25) {
        // Series of log(sin x / x) = -sum 2^{2k-1} |B_{2k}| x^{2k} / (k (2k)!).
        return x2 * (-1.0 / 6 + x2 * (-1.0 / 180 + x2 * (-1.0 / 2835 + x2 * (-1.0 / 37800 +
                                                                             x2 * (-1.0 / 467775)))));
    }
    return std::log(std::sin(x) / x);
}

inline DistributionModel uniform() {
    const double r = std::sqrt(3.0);
    DistributionModel d;
    d.name = "uniform";
    d.density = [r](double x) { return std::abs(x) <= r ? 0.5 / r : 0.0; };
    d.cdf = [r](double x) { return x <= -r ? 0.0 : (x >= r ? 1.0 : (x + r) / (2 * r)); };
    d.charfn = [r](double t) {
        const double u = r * t;
        return cplx(std::abs(u) < 1e-8 ? 1.0 - u * u / 6 : std::sin(u) / u);
    };
    d.log_charfn = [r](double t) { return cplx(log_sinc(r * t)); };
    d.log_radius = std::numbers::pi / r;
    d.envelope = [r](double t) {
        const double u = std::abs(r * t);
        return u <= 1.0 ? 1.0 : 1.0 / u;
    };
    std::vector<double> a(12);
    for (int k = 1; k <= 12; ++k) a[k - 1] = (k % 2) ? 0.0 : std::pow(3.0, k / 2) / (k + 1);
    d.moments = MomentVector(std::move(a));
    d.breakpoints = {-r, r};
    d.support_lo = -r;
    d.support_hi = r;
    return d;
}

// Exp(1) - 1: mean 0, variance 1, gamma_k = (k-1)!.
inline DistributionModel exp1() {
    DistributionModel d;
    d.name = "exp1";
    d.density = [](double x) { return x < -1.0 ? 0.0 : std::exp(-(x + 1.0)); };
    d.cdf = [](double x) { return x <= -1.0 ? 0.0 : -std::expm1(-(x + 1.0)); };
    d.charfn = [](double t) { return std::exp(cplx(0.0, -t)) / cplx(1.0, -t); };
    d.log_charfn = [](double t) { return cplx(0.0, -t) - std::log(cplx(1.0, -t)); };
    d.envelope = [](double t) { return 1.0 / std::sqrt(1.0 + t * t); };
    // E(E-1)^k is the number of derangements of k objects.
    std::vector<double> a{0.0, 1.0};
    for (int k = 3; k <= 12; ++k) a.push_back((k - 1) * (a[k - 2] + a[k - 3]));
    d.moments = MomentVector(std::move(a));
    d.breakpoints = {-1.0};
    d.support_lo = -1.0;
    return d;
}

// Student-t with nu degrees of freedom scaled to unit variance (nu > 4).
inline DistributionModel student_t(double nu = 4.5) {
    if (!(nu > 4.0)) throw PreconditionError("student_t: need nu > 4 for four finite moments");
    const double sigma = std::sqrt((nu - 2.0) / nu);
    const boost::math::students_t_distribution<double> dist(nu);
    DistributionModel d;
    d.name = "student_t";
    d.density = [dist, sigma](double x) { return boost::math::pdf(dist, x / sigma) / sigma; };
    d.cdf = [dist, sigma](double x) {
        return x < 0 ? boost::math::cdf(boost::math::complement(dist, -x / sigma)) : boost::math::cdf(dist, x / sigma);
    };
    const double half = 0.5 * nu;
    const double norm = std::tgamma(half) * std::pow(2.0, half - 1.0);
    auto value = [=](double t) {
        // K_{nu/2}(y) y^{nu/2} / (Gamma(nu/2) 2^{nu/2-1}) with y = sqrt(nu)|sigma t|.
        const double y = std::sqrt(nu) * std::abs(sigma * t);
        if (y < 1e-12) return 1.0;
        if (y > 700.0) return 0.0;
        return std::cyl_bessel_k(half, y) * std::pow(y, half) / norm;
    };
    d.charfn = [value](double t) { return cplx(value(t)); };
    d.log_charfn = [value](double t) { return cplx(std::log(value(t))); };
    d.envelope = value;
    d.moments = MomentVector({0.0, 1.0, 0.0, 3.0 * (nu - 2.0) / (nu - 4.0)});
    d.s_max = nu;
    return d;
}

// (Y - 1)/sqrt(2) with Y chi-square on one degree of freedom.
inline DistributionModel chi2_1() {
    const double s2 = std::numbers::sqrt2;
    DistributionModel d;
    d.name = "chi2_1";
    d.density = [s2](double x) {
        const double y = s2 * x + 1.0;
        if (y <= 0.0) return 0.0;
        return s2 * std::exp(-0.5 * y) / std::sqrt(2.0 * std::numbers::pi * y);
    };
    d.cdf = [s2](double x) {
        const double y = s2 * x + 1.0;
        return y <= 0.0 ? 0.0 : std::erf(std::sqrt(0.5 * y));
    };
    d.charfn = [s2](double t) { return std::exp(cplx(0.0, -t / s2)) / std::sqrt(cplx(1.0, -s2 * t)); };
    d.log_charfn = [s2](double t) { return cplx(0.0, -t / s2) - 0.5 * std::log(cplx(1.0, -s2 * t)); };
    d.envelope = [](double t) { return std::pow(1.0 + 2.0 * t * t, -0.25); };
    std::vector<double> g(12);
    for (int k = 1; k <= 12; ++k) g[k - 1] = k == 1 ? 0.0 : std::pow(2.0, 0.5 * k - 1.0) * factorial(k - 1);
    d.moments = moments_from_cumulants(CumulantVector(std::move(g)));
    d.bounded_density = false;
    d.breakpoints = {-1.0 / s2};
    d.support_lo = -1.0 / s2;
    return d;
}

}  // namespace models

inline std::vector<DistributionModel> zoo() {
    return {models::gaussian(), models::uniform(), models::exp1(), models::student_t(), models::chi2_1()};
}

inline DistributionModel model_by_name(const std::string& name) {
    for (auto& m : zoo())
        if (m.name == name) return m;
    throw ConfigurationError("unknown model '" + name + "' (expected gaussian, uniform, exp1, student_t, chi2_1)");
}

// v(t/sqrt(n))^n.
inline cplx v_n(const DistributionModel& model, double t, int n) {
    if (!model.standardized) throw PreconditionError("v_n: model must be standardized");
    if (n < 1) throw PreconditionError("v_n: n must be positive");
    const double tau = t / std::sqrt(static_cast<double>(n));
    if (model.log_charfn && std::abs(tau) < model.log_radius) return std::exp(static_cast<double>(n) * model.log_charfn(tau));
    cplx base = model.charfn(tau), out = 1.0;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) out *= base;
        base *= base;
    }
    return out;
}

// psi_z(t) = t^2/2 + log v(tz) / z^2, with log v continued from log v(0) = 0.
inline cplx psi_z(const DistributionModel& model, double t, double z) {
    if (z == 0.0) throw PreconditionError("psi_z: z must be non-zero");
    const double end = t * z;
    if (end == 0.0) return 0.0;
    double pos = 0.0, step = end / 64.0;
    cplx prev = model.charfn(0.0);
    double arg = 0.0;
    const double min_step = 1e-12 * std::abs(end);
    while (pos != end) {
        double next = pos + step;
        if ((step > 0 && next > end) || (step < 0 && next < end)) next = end;
        const cplx v = model.charfn(next);
        if (std::abs(v) == 0.0) throw BranchError("psi_z: characteristic function vanishes on the path", next);
        const double d = std::arg(v / prev);
        if (std::abs(d) >= std::numbers::pi / 4) {
            step *= 0.5;
            if (std::abs(step) < min_step)
                throw BranchError("psi_z: argument of the characteristic function jumps (zero nearby)", next);
            continue;
        }
        arg += d;
        prev = v;
        pos = next;
    }
    const cplx log_v(std::log(std::abs(prev)), arg);
    return 0.5 * t * t + log_v / (z * z);
}

struct ResidualProbeReport {
    std::vector<int> n;
    std::vector<double> t_grid;
    std::vector<double> residual;         // R(n)
    std::vector<double> scaled_residual;  // R(n) n^{(s-2)/2}
    std::vector<double> remainder;        // max normalized r_n
    double slope = 0.0;                   // least-squares slope of log R against log n
};

namespace detail {

inline double loglog_slope(const std::vector<int>& n, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double lx = std::log(static_cast<double>(n[i])), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
        ++k;
    }
    if (k < 2) return std::numeric_limits<double>::quiet_NaN();
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace detail

inline ResidualProbeReport residual_probe(const DistributionModel& model, const ExpansionOrder& order,
                                          const std::vector<int>& n_list, const std::vector<double>& t_grid) {
    if (order.s > model.s_max) throw PreconditionError("residual_probe: s exceeds the model's moment order");
    const CumulantVector cum = model.cumulants(order.m);
    const int m = order.m;
    const double m1 = order.s, m2 = order.s + 3.0 * (m - 2);
    ResidualProbeReport rep;
    rep.n = n_list;
    rep.t_grid = t_grid;
    for (int n : n_list) {
        const double window = std::pow(static_cast<double>(n), 1.0 / 6.0);
        const EdgeworthApproximant approx(order, cum, n);
        const double z = 1.0 / std::sqrt(static_cast<double>(n));
        double rmax = 0.0, remmax = 0.0;
        for (double t : t_grid) {
            if (t == 0.0 || std::abs(t) > window)
                throw PreconditionError("residual_probe: t = " + num_text(t) +
                                        " outside 0 < |t| <= n^{1/6} for n = " + std::to_string(n));
            const double g = std::exp(-0.5 * t * t);
            const cplx diff = v_n(model, t, n) - approx.u(t, z);
            const double at = std::abs(t);
            rmax = std::max(rmax, std::abs(diff) / ((std::pow(at, m1) + std::pow(at, m2)) * g));
            const double tau = t * z;
            const cplx inner = model.charfn(tau) - approx.u(tau, 1.0);
            const cplx r = diff - static_cast<double>(n) * inner * g;
            remmax = std::max(remmax, std::abs(r) / ((1.0 + std::pow(at, 4.0 * m * m)) * g));
        }
        rep.residual.push_back(rmax);
        rep.scaled_residual.push_back(rmax * std::pow(static_cast<double>(n), 0.5 * (order.s - 2.0)));
        rep.remainder.push_back(remmax);
    }
    rep.slope = detail::loglog_slope(n_list, rep.residual);
    return rep;
}

}  // namespace edgeworth
