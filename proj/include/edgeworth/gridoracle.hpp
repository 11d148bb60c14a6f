#pragma once

// Ground-truth densities rho_n of S_n = (X_1 + ... + X_n)/sqrt(n) by grid
// convolution and by Fourier inversion, and the error functionals comparing
// them with phi_m.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "edgeworth/charfun.hpp"
#include "edgeworth/errors.hpp"
#include "edgeworth/expansion.hpp"
#include "edgeworth/fft.hpp"
#include "edgeworth/grid.hpp"
#include "edgeworth/quadrature.hpp"

namespace edgeworth {

struct GridOptions {
    double h = 1.0 / 256;   // spacing before normalization
    double L = 16.0;        // minimum half-width before normalization
    double L_max = 64.0;    // cap on the half-width of convolution powers
    double mass_budget = 1e-6;
};

// n-fold convolution power by binary powering.
inline GridDensity self_convolve(const GridDensity& f, int n, double L_max = 64.0, double mass_budget = 1e-6) {
    if (n < 1) throw PreconditionError("self_convolve: n must be positive");
    GridDensity result, base = f;
    bool have = false;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) {
            result = have ? convolve(result, base, L_max) : base;
            have = true;
        }
        if (e > 1) base = convolve(base, base, L_max);
    }
    const double cut = result.lost_mass - n * f.lost_mass;
    if (cut > mass_budget)
        throw TruncationError("self_convolve: grid cut at L_max = " + num_text(L_max) + " dropped mass " +
                                  num_text(cut),
                              cut);
    return result;
}

// Half-width used to discretize a model: at least L, wide enough that the
// model's tail mass beyond it is below 1e-10, and never beyond L_max.
inline double model_half_width(const DistributionModel& model, double L, double L_max) {
    double w = L;
    try {
        w = std::max(L, model.tail_width(1e-10) + 1.0);
    } catch (const NumericError&) {
        w = L_max;
    }
    return std::min(w, L_max);
}

// sqrt(n) rho^{*n}(x sqrt(n)) at the native points x_i = i h / sqrt(n).
inline GridDensity normalized_sum_native(const DistributionModel& model, int n, const GridOptions& opt = {}) {
    const double h = aligned_spacing(model, opt.h);
    const GridDensity base = discretize(model, model_half_width(model, opt.L, opt.L_max), h);
    GridDensity conv = self_convolve(base, n, opt.L_max, opt.mass_budget);
    const double rn = std::sqrt(static_cast<double>(n));
    conv.h = h / rn;
    for (double& v : conv.values) v *= rn;
    return conv;
}

// rho_n on the grid [-L, L] with spacing h, interpolated from the native grid.
inline GridDensity normalized_sum_density(const DistributionModel& model, int n, double L, double h,
                                          const GridOptions& opt = {}) {
    const GridDensity native = normalized_sum_native(model, n, opt);
    GridDensity out = GridDensity::sample([&](double x) { return native.at(x); }, L, h);
    out.lost_mass = native.lost_mass;
    return out;
}

struct CutoffRule {
    enum class Kind { automatic, fixed, scaled } kind = Kind::automatic;
    double value = 0.0;  // T for fixed, c in T = c n^{1/6} for scaled

    static CutoffRule parse(const std::string& s) {
        if (s == "auto") return {};
        const auto colon = s.find(':');
        if (colon != std::string::npos) {
            const std::string head = s.substr(0, colon);
            double v = 0.0;
            try {
                v = std::stod(s.substr(colon + 1));
            } catch (const std::exception&) {
                throw ConfigurationError("cutoff rule: bad number in '" + s + "'");
            }
            if (!(v > 0.0)) throw ConfigurationError("cutoff rule: value must be positive");
            if (head == "fixed") return {Kind::fixed, v};
            if (head == "scaled") return {Kind::scaled, v};
        }
        throw ConfigurationError("cutoff rule '" + s + "' not one of auto, fixed:T, scaled:c");
    }
};

// (1/pi) int_T^inf env(t/sqrt(n))^n dt, bounding the inversion error from
// discarding |t| > T. Throws ConfigurationError if the integral diverges.
inline double inversion_tail_bound(const DistributionModel& model, int n, double T) {
    const double rn = std::sqrt(static_cast<double>(n));
    auto f = [&](double t) { return std::pow(model.envelope(t / rn), n); };
    double total = 0.0, prev_panel = 0.0;
    double a = T, w = std::max(T, 1.0);
    for (int panel = 0; panel < 200; ++panel) {
        const double p = quad::legendre_panel(f, a, a + w, 32);
        total += p;
        if (p == 0.0 || (p < 1e-4 * total && prev_panel > 0.0 && p < prev_panel)) {
            const double r = prev_panel > 0.0 ? p / prev_panel : 0.0;
            if (r < 1.0) total += p * r / (1.0 - r);
            return total / std::numbers::pi;
        }
        prev_panel = p;
        a += w;
        w *= 2.0;
        if (a > 1e15) break;
    }
    throw ConfigurationError("invert_charfn: |v_n| is not integrable for model " + model.name +
                             " at n = " + std::to_string(n));
}

inline double choose_cutoff(const DistributionModel& model, int n, const CutoffRule& rule, double tail_budget) {
    if (rule.kind == CutoffRule::Kind::fixed || rule.kind == CutoffRule::Kind::scaled) {
        const double T = rule.kind == CutoffRule::Kind::fixed ? rule.value
                                                              : rule.value * std::pow(static_cast<double>(n), 1.0 / 6.0);
        const double tail = inversion_tail_bound(model, n, T);
        if (tail > tail_budget)
            throw ConfigurationError("invert_charfn: cutoff T = " + num_text(T) + " leaves tail estimate " +
                                     num_text(tail) + " above budget " + num_text(tail_budget));
        return T;
    }
    double lo = 0.0, hi = 1.0;
    while (inversion_tail_bound(model, n, hi) > tail_budget) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) throw ConfigurationError("invert_charfn: no cutoff below 1e9 meets the tail budget");
    }
    for (int i = 0; i < 30; ++i) {
        const double mid = 0.5 * (lo + hi);
        (inversion_tail_bound(model, n, mid) > tail_budget ? lo : hi) = mid;
    }
    return hi;
}

struct InversionOptions {
    CutoffRule cutoff{};
    double tail_budget = 1e-6;
    // Width beyond which rho_n is treated as zero when choosing the
    // aliasing period.
    double alias_width = 60.0;
};

// rho_n(x) = (1/2 pi) int_{|t| <= T} e^{-itx} v_n(t) dt on x = j delta,
// |x| <= L, by the trapezoid rule with the aliasing period pushed past the
// support and the t-samples folded onto a DFT of the output size.
inline GridDensity invert_charfn(const DistributionModel& model, int n, double L, double delta,
                                 const InversionOptions& opt = {}) {
    if (!(delta > 0.0) || !(L > 0.0)) throw PreconditionError("invert_charfn: need L > 0 and delta > 0");
    const double T = choose_cutoff(model, n, opt.cutoff, opt.tail_budget);
    double W = opt.alias_width;
    try {
        W = std::min(opt.alias_width, std::max(16.0, model.tail_width(1e-13)));
    } catch (const NumericError&) {
    }
    const double period_min = 2.0 * (L + W);
    const std::size_t N = fft::good_size(static_cast<std::size_t>(std::ceil(period_min / delta)));
    const double period = static_cast<double>(N) * delta;
    const double dt = 2.0 * std::numbers::pi / period;
    const long K = static_cast<long>(std::ceil(T / dt));

    std::vector<cplx> bins(N, cplx{});
    for (long k = 0; k <= K; ++k) {
        const cplx v = v_n(model, static_cast<double>(k) * dt, n);
        bins[static_cast<std::size_t>(k % static_cast<long>(N))] += (k == 0 || k == K) ? 0.5 * v : v;
    }
    const auto X = fft::dft_forward(bins);

    const int half = static_cast<int>(std::lround(L / delta));
    GridDensity out(delta, half);
    for (int j = -half; j <= half; ++j) {
        const std::size_t l = static_cast<std::size_t>((j % static_cast<long>(N) + static_cast<long>(N)) % static_cast<long>(N));
        out.values[static_cast<std::size_t>(j + half)] = dt / std::numbers::pi * X[l].real();
    }
    out.error_bound = inversion_tail_bound(model, n, T);
    return out;
}

struct WeightedError {
    double value = 0.0;
    double at_x = 0.0;
    bool boundary_flag = false;  // maximum sits at the edge of the grid
};

// max over the grid of (1 + |x|^w) |rho_n(x) - phi_m(x)|.
inline WeightedError nonuniform_error(const GridDensity& rho, const EdgeworthApproximant& approx, double weight_power) {
    WeightedError e;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double x = rho.x(i);
        const double w = weight_power == 0.0 ? 1.0 : 1.0 + std::pow(std::abs(x), weight_power);
        const double v = w * std::abs(rho.values[i] - approx.phi(x));
        if (v > e.value) {
            e.value = v;
            arg = i;
        }
    }
    e.at_x = rho.x(arg);
    const std::size_t edge = std::max<std::size_t>(2, rho.size() / 50);
    e.boundary_flag = arg < edge || arg + edge >= rho.size();
    return e;
}

// h sum |rho_n - phi_m|, the grid version of the total-variation distance.
inline double tv_error(const GridDensity& rho, const EdgeworthApproximant& approx) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) s += std::abs(rho.values[i] - approx.phi(rho.x(i)));
    return s * rho.h;
}

}  // namespace edgeworth
