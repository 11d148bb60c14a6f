#pragma once

// Liouville fractional integrals and derivatives on the half-axis (0, inf)
//
//   (I^a_{0+} y)(x) = 1/Gamma(a) int_0^x y(t) (x - t)^{a-1} dt
//   (I^a_-   y)(x) = 1/Gamma(a) int_x^inf y(t) (t - x)^{a-1} dt
//   D^a_{0+} = d/dx I^{1-a}_{0+},   D^a_- = -d/dx I^{1-a}_-
//
// and numerical checks of their exponential eigen-identities, integration by
// parts, and the Fourier relation for g = V^ h with h the Gaussian.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgeworth/errors.hpp"
#include "edgeworth/poly.hpp"
#include "edgeworth/quadrature.hpp"

namespace edgeworth::fractional {

enum class Side { left, right };

struct FractionalOrder {
    double alpha;
    explicit FractionalOrder(double a) : alpha(a) {
        if (!(a > 0.0 && a < 1.0)) throw PreconditionError("FractionalOrder: need 0 < alpha < 1");
    }
};

inline constexpr int kJacobiNodes = 40;
inline constexpr int kPanelNodes = 16;

namespace detail {

// int_0^d y(x + sign s) s^{b-1} ds by Gauss-Jacobi in s.
template <typename F>
auto endpoint_segment(F& y, double x, double sign, double d, double b) {
    const quad::Rule& r = quad::gauss_jacobi(kJacobiNodes, 0.0, b - 1.0);
    using R = decltype(y(x));
    R acc{};
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * y(x + sign * 0.5 * d * (1.0 + r.x[i]));
    return std::pow(0.5 * d, b) * acc;
}

// Breakpoints on [0, b]: geometric toward 0 on [0, min(1, b)], then panels of
// width at most 0.5.
inline std::vector<double> left_breaks(double b) {
    const double g = std::min(1.0, b);
    std::vector<double> br = quad::graded_breaks(0.0, g, 1e-9 * g, 2.0);
    const int panels = static_cast<int>(std::ceil((b - g) / 0.5));
    for (int p = 1; p <= panels; ++p) br.push_back(g + (b - g) * p / panels);
    return br;
}

}  // namespace detail

// I^b_{0+} y at x > 0.
template <typename F>
auto left_integral(F&& y, double b, double x) {
    if (!(x > 0.0)) throw PreconditionError("liouville_integral: x must be positive");
    const double d = std::min(0.5 * x, 0.5);
    auto near = detail::endpoint_segment(y, x, -1.0, d, b);
    auto kern = [&](double t) { return y(t) * std::pow(x - t, b - 1.0); };
    auto far = quad::over_breaks(kern, detail::left_breaks(x - d), kPanelNodes);
    return (near + far) / std::tgamma(b);
}

// I^b_- y at x > 0; the tail is summed panel by panel until it stops
// contributing.
template <typename F>
auto right_integral(F&& y, double b, double x, double max_reach = 1e4) {
    if (!(x > 0.0)) throw PreconditionError("liouville_integral: x must be positive");
    const double d = 0.5;
    auto acc = detail::endpoint_segment(y, x, 1.0, d, b);
    auto kern = [&](double t) { return y(t) * std::pow(t - x, b - 1.0); };
    double a = x + d, w = 0.5;
    int quiet = 0;
    while (quiet < 4) {
        const auto p = quad::legendre_panel(kern, a, a + w, kPanelNodes);
        acc += p;
        quiet = std::abs(p) <= 1e-17 * std::abs(acc) || std::abs(p) < 1e-300 ? quiet + 1 : 0;
        a += w;
        w = std::min(w * 1.1, 4.0);
        if (a - x > max_reach)
            throw NumericError("liouville_integral: right-sided integral has not converged by t = " +
                               num_text(a));
    }
    return acc / std::tgamma(b);
}

template <typename F>
auto liouville_integral(Side side, F&& y, FractionalOrder a, double x) {
    return side == Side::left ? left_integral(y, a.alpha, x) : right_integral(y, a.alpha, x);
}

// D^a y = +-d/dx I^{1-a} y by central differences at steps H, H/2, H/4 with
// two rounds of Richardson extrapolation.
template <typename F>
auto liouville_derivative(Side side, F&& y, FractionalOrder a, double x, double step = 1e-4) {
    if (!(x > 0.0)) throw PreconditionError("liouville_derivative: x must be positive");
    const double b = 1.0 - a.alpha;
    auto I = [&](double u) { return side == Side::left ? left_integral(y, b, u) : right_integral(y, b, u); };
    // I^{1-a}_{0+} y shrinks with x, so the left step scales with x. The
    // right integral stays O(1) near 0, where a shrinking step would only
    // amplify rounding; there the difference turns one-sided instead.
    const bool one_sided = side == Side::right && x < 4.0 * step;
    const double H = side == Side::left ? std::min(step, 0.25 * x) : step;
    auto central = [&](double s) {
        if (one_sided) return (4.0 * I(x + s) - 3.0 * I(x) - I(x + 2.0 * s)) / (2.0 * s);
        return (I(x + s) - I(x - s)) / (2.0 * s);
    };
    const auto d1 = central(H), d2 = central(0.5 * H), d3 = central(0.25 * H);
    const auto r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
    const auto value = (16.0 * r2 - r1) / 15.0;
    if (std::abs(r2 - r1) > 1e-5 * std::max(1.0, std::abs(value)))
        throw NumericError("liouville_derivative: Richardson estimates disagree by " +
                           num_text(std::abs(r2 - r1)) + " at x = " + num_text(x));
    return side == Side::left ? value : -value;
}

struct IdentityCheck {
    double lhs_re = 0.0, lhs_im = 0.0;
    double rhs_re = 0.0, rhs_im = 0.0;
    double discrepancy() const { return std::hypot(lhs_re - rhs_re, lhs_im - rhs_im); }
};

// int_0^inf f D^a_{0+} g dx against int_0^inf g D^a_- f dx.
inline IdentityCheck fractional_parts_identity_check(const std::function<double(double)>& f,
                                                     const std::function<double(double)>& g, FractionalOrder a,
                                                     double reach = 30.0) {
    const auto br = detail::left_breaks(reach);
    auto lhs_integrand = [&](double x) {
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * liouville_derivative(Side::left, g, a, x);
    };
    auto rhs_integrand = [&](double x) {
        const double gx = g(x);
        return gx == 0.0 ? 0.0 : gx * liouville_derivative(Side::right, f, a, x);
    };
    IdentityCheck c;
    c.lhs_re = quad::over_breaks(lhs_integrand, br, kPanelNodes);
    c.rhs_re = quad::over_breaks(rhs_integrand, br, kPanelNodes);
    return c;
}

// Finite signed measure: weighted atoms plus an optional density part on
// [lo, hi].
struct SignedMeasureSpec {
    std::vector<std::pair<double, double>> atoms;  // (location, weight)
    std::function<double(double)> density_part;
    double density_lo = 0.0, density_hi = 0.0;

    bool has_density() const { return static_cast<bool>(density_part); }

    double moment(int j) const {
        double s = 0.0;
        for (const auto& [u, w] : atoms) s += w * std::pow(u, j);
        if (has_density())
            s += quad::composite([&](double u) { return std::pow(u, j) * density_part(u); }, density_lo, density_hi,
                                 64, kPanelNodes);
        return s;
    }

    // V^(x) = int e^{ixu} dV(u).
    cplx fourier(double x) const {
        cplx s{};
        for (const auto& [u, w] : atoms) s += w * std::exp(cplx(0.0, x * u));
        if (has_density())
            s += quad::composite([&](double u) { return density_part(u) * std::exp(cplx(0.0, x * u)); }, density_lo,
                                 density_hi, 64, kPanelNodes);
        return s;
    }

    // Largest k <= 8 with moments 0..k all vanishing; -1 if the mass does not.
    int vanishing_moments(double tol = 1e-10) const {
        int k = -1;
        while (k < 8 && std::abs(moment(k + 1)) <= tol) ++k;
        return k;
    }

    bool is_zero() const {
        if (has_density()) return false;
        return std::all_of(atoms.begin(), atoms.end(), [](const auto& a) { return a.second == 0.0; });
    }
};

namespace measures {

// delta_1 - delta_{-1}: total mass zero, first moment 2.
inline SignedMeasureSpec dipole() { return {{{1.0, 1.0}, {-1.0, -1.0}}, {}, 0.0, 0.0}; }
// delta_1 - 2 delta_0 + delta_{-1}: moments 0 and 1 vanish.
inline SignedMeasureSpec second_difference() { return {{{1.0, 1.0}, {0.0, -2.0}, {-1.0, 1.0}}, {}, 0.0, 0.0}; }

}  // namespace measures

inline void require_vanishing(const SignedMeasureSpec& V, int m, const char* who) {
    if (m < 0) throw PreconditionError(std::string(who) + ": m must be non-negative");
    if (V.vanishing_moments() < m)
        throw PreconditionError(std::string(who) + ": moments 0.." + std::to_string(m) +
                                " of the measure must vanish");
}

struct FourierCheckReport {
    std::vector<double> t;
    std::vector<cplx> lhs, rhs;
    double max_relative = 0.0;
    // Shape of (1 + x)^a |D^a g(x)| on (0, 20].
    std::vector<double> decay_x, decay_value;
    double decay_max = 0.0;
    bool decay_bounded = true;
};

namespace detail {

// int_a^inf e^{ity} y^{-beta} dy for a > 0, t != 0, by rotating the ray into
// the half-plane where e^{ity} decays.
inline cplx oscillatory_power_tail(double a, double t, double beta) {
    const quad::Rule& r = quad::gauss_laguerre(40, 0.0);
    const double sgn = t > 0 ? 1.0 : -1.0;
    const double at = std::abs(t);
    cplx acc{};
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * std::pow(cplx(a, sgn * r.x[i] / at), -beta);
    return cplx(0.0, sgn / at) * std::exp(cplx(0.0, t * a)) * acc;
}

}  // namespace detail

// Compares int_0^inf e^{itx} D^a_{0+} g dx with (-it)^a int_0^inf e^{itx} g dx
// for g(x) = V^(x) e^{-x^2/2}. On [0, X] the left side integrates the
// numerical derivative; beyond X, where g has vanished, D^a g has the closed
// form -a/Gamma(1-a) int_0^{X0} g(u) (x - u)^{-a-1} du, integrated in x
// analytically.
inline FourierCheckReport fractional_fourier_check(const SignedMeasureSpec& V, FractionalOrder a, int m,
                                                   const std::vector<double>& t_list) {
    require_vanishing(V, m, "fractional_fourier_check");
    FourierCheckReport rep;
    rep.t = t_list;
    const double X = 20.0, X0 = 10.0;
    auto g = [&](double x) { return V.fourier(x) * std::exp(-0.5 * x * x); };

    // D^a g at the quadrature nodes of [0, X], computed once.
    const auto br = detail::left_breaks(X);
    const quad::Rule& r = quad::gauss_legendre(kPanelNodes);
    std::vector<double> xs, ws;
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
        const double c = 0.5 * (br[p] + br[p + 1]), h = 0.5 * (br[p + 1] - br[p]);
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            xs.push_back(c + h * r.x[i]);
            ws.push_back(h * r.w[i]);
        }
    }
    std::vector<cplx> dg(xs.size(), cplx{});
    if (!V.is_zero())
        for (std::size_t i = 0; i < xs.size(); ++i) dg[i] = liouville_derivative(Side::left, g, a, xs[i]);

    // Nodes for the u-integral of the analytic tail and for the right side.
    const auto ubr = detail::left_breaks(X0);
    std::vector<double> us, uw;
    for (std::size_t p = 0; p + 1 < ubr.size(); ++p) {
        const double c = 0.5 * (ubr[p] + ubr[p + 1]), h = 0.5 * (ubr[p + 1] - ubr[p]);
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            us.push_back(c + h * r.x[i]);
            uw.push_back(h * r.w[i]);
        }
    }
    std::vector<cplx> gu(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) gu[i] = g(us[i]);

    const double coef = -a.alpha / std::tgamma(1.0 - a.alpha);
    for (double t : t_list) {
        if (t == 0.0) throw PreconditionError("fractional_fourier_check: t must be non-zero");
        cplx lhs{}, ft{};
        for (std::size_t i = 0; i < xs.size(); ++i) lhs += ws[i] * std::exp(cplx(0.0, t * xs[i])) * dg[i];
        cplx tail{};
        for (std::size_t i = 0; i < us.size(); ++i) {
            const cplx e = std::exp(cplx(0.0, t * us[i]));
            tail += uw[i] * gu[i] * e * detail::oscillatory_power_tail(X - us[i], t, a.alpha + 1.0);
            ft += uw[i] * gu[i] * e;
        }
        lhs += coef * tail;
        const cplx rhs = std::pow(cplx(0.0, -t), a.alpha) * ft;
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        const double scale = std::abs(rhs);
        const double rel = scale > 1e-300 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
        rep.max_relative = std::max(rep.max_relative, rel);
    }

    if (!V.is_zero()) {
        double prev = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double x = 0.01 * std::pow(2000.0, i / 40.0);
            const double v = std::pow(1.0 + x, a.alpha) * std::abs(liouville_derivative(Side::left, g, a, x));
            rep.decay_x.push_back(x);
            rep.decay_value.push_back(v);
            rep.decay_max = std::max(rep.decay_max, v);
            prev = v;
        }
        // Bounded and not growing at the right edge.
        const std::size_t n = rep.decay_value.size();
        rep.decay_bounded = std::isfinite(rep.decay_max) && prev <= rep.decay_value[n - 2] * (1.0 + 1e-6);
    }
    return rep;
}

struct ScaledDecayReport {
    std::vector<double> z;
    std::vector<double> eps_hat;
    bool decreasing = true;
};

// eps^(z) = max_t |int e^{itx} V^(zx) h(x) dx| (1 + |t|)^a / z^{m+a}.
inline ScaledDecayReport scaled_decay_check(const SignedMeasureSpec& V, FractionalOrder a, int m,
                                            const std::vector<double>& z_list, const std::vector<double>& t_list) {
    require_vanishing(V, m, "scaled_decay_check");
    ScaledDecayReport rep;
    rep.z = z_list;
    for (double z : z_list) {
        if (!(z > 0.0 && z <= 1.0)) throw PreconditionError("scaled_decay_check: z must lie in (0, 1]");
        double worst = 0.0;
        for (double t : t_list) {
            auto f = [&](double x) { return std::exp(cplx(0.0, t * x)) * V.fourier(z * x) * std::exp(-0.5 * x * x); };
            const cplx I = quad::composite(f, -14.0, 14.0, 112, kPanelNodes);
            worst = std::max(worst, std::abs(I) * std::pow(1.0 + std::abs(t), a.alpha) / std::pow(z, m + a.alpha));
        }
        rep.eps_hat.push_back(worst);
    }
    // Decreasing as z shrinks, after sorting by z descending.
    std::vector<std::pair<double, double>> zs;
    for (std::size_t i = 0; i < z_list.size(); ++i) zs.emplace_back(z_list[i], rep.eps_hat[i]);
    std::sort(zs.begin(), zs.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
    for (std::size_t i = 1; i < zs.size(); ++i)
        if (!(zs[i].second < zs[i - 1].second)) rep.decreasing = false;
    return rep;
}

}  // namespace edgeworth::fractional
