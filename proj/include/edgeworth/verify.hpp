#pragma once

// Invariant batteries, one per module, run by `edgeworth verify <suite>`.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "edgeworth/charfun.hpp"
#include "edgeworth/combinatorics.hpp"
#include "edgeworth/cumulants.hpp"
#include "edgeworth/expansion.hpp"
#include "edgeworth/fractional.hpp"
#include "edgeworth/gridoracle.hpp"
#include "edgeworth/quadrature.hpp"
#include "edgeworth/series.hpp"
#include "edgeworth/smoothing.hpp"

namespace edgeworth::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Options {
    // Added to gamma_4 of the fixtures fed to the projection check, while the
    // reference keeps the original value; a correct build must then fail.
    double perturb_gamma4 = 0.0;
    std::uint64_t seed = 20240917;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

inline CheckResult check(std::string name, double measured, double limit) {
    return {std::move(name), measured <= limit, "measured " + fmt(measured) + " (limit " + fmt(limit) + ")"};
}

// Standardized cumulants gamma_1 = 0, gamma_2 = 1, the rest uniform in [-2, 2].
inline CumulantVector random_cumulants(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> g{0.0, 1.0};
    for (int k = 3; k <= m; ++k) g.push_back(u(rng));
    return CumulantVector(std::move(g));
}

inline long partition_count(int n, int max_part) {
    if (n == 0) return 1;
    if (n < 0 || max_part == 0) return 0;
    return partition_count(n - max_part, max_part) + partition_count(n, max_part - 1);
}

}  // namespace detail

inline std::vector<CheckResult> cumulants_suite(const Options& opt = {}) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);

    bool counts_ok = true;
    for (int k = 1; k <= 12; ++k)
        counts_ok &= static_cast<long>(enumerate_weighted_partitions(k).size()) == detail::partition_count(k, k);
    out.push_back({"partition counts match p(k) for k <= 12", counts_ok, ""});

    double rt = 0.0, so = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + trial % 7;
        std::vector<double> a(static_cast<std::size_t>(m));
        for (double& v : a) v = u(rng);
        const MomentVector mv(a);
        const CumulantVector cv = cumulants_from_moments(mv);
        const MomentVector back = moments_from_cumulants(cv);
        for (int k = 1; k <= m; ++k)
            rt = std::max(rt, std::abs(back.alpha(k) - mv.alpha(k)) / std::max(1.0, std::abs(mv.alpha(k))));
        // log of sum alpha_k x^k / k! as a series; gamma_p = p! [x^p].
        series::Coeffs f(static_cast<std::size_t>(m) + 1, cplx{});
        f[0] = 1.0;
        for (int k = 1; k <= m; ++k) f[static_cast<std::size_t>(k)] = mv.alpha(k) / factorial(k);
        const auto g = series::log(f, m);
        for (int p = 1; p <= m; ++p) {
            const double ref = g[static_cast<std::size_t>(p)].real() * factorial(p);
            so = std::max(so, std::abs(ref - cv.gamma(p)) / std::max(1.0, std::abs(ref)));
        }
    }
    out.push_back(detail::check("moments -> cumulants -> moments round trip", rt, 1e-12));
    out.push_back(detail::check("partition cumulants equal series-log cumulants", so, 1e-10));

    const auto nc = cumulants_from_moments(MomentVector({0, 1, 0, 3, 0, 15}));
    double nz = 0.0;
    for (int k = 3; k <= 6; ++k) nz = std::max(nz, std::abs(nc.gamma(k)));
    out.push_back(detail::check("normal moments give vanishing cumulants of order >= 3", nz, 1e-14));

    const quad::Rule& gh = quad::gauss_hermite(64);
    double orth = 0.0;
    for (int j = 0; j <= 8; ++j)
        for (int k = 0; k <= 8; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < gh.x.size(); ++i) {
                const auto h = hermite_values(8, gh.x[i]);
                s += gh.w[i] * h[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(k)];
            }
            s /= std::sqrt(2.0 * std::numbers::pi);
            orth = std::max(orth, std::abs(s - (j == k ? factorial(k) : 0.0)));
        }
    out.push_back(detail::check("Hermite orthogonality under the Gaussian weight", orth, 1e-8));

    const quad::Rule& gh96 = quad::gauss_hermite(96);
    double dual = 0.0;
    for (int k = 0; k <= 8; ++k)
        for (int it = 0; it <= 100; ++it) {
            const double t = -5.0 + 0.1 * it;
            cplx s{};
            for (std::size_t i = 0; i < gh96.x.size(); ++i)
                s += gh96.w[i] * std::exp(cplx(0.0, t * gh96.x[i])) * hermite_values(k, gh96.x[i]).back();
            s /= std::sqrt(2.0 * std::numbers::pi);
            dual = std::max(dual, std::abs(s - std::pow(cplx(0.0, t), k) * std::exp(-0.5 * t * t)));
        }
    out.push_back(detail::check("Hermite-Fourier duality on [-5, 5]", dual, 1e-8));
    return out;
}

inline std::vector<CheckResult> edgeworth_suite(const Options& opt = {}) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(opt.seed + 1);

    double diff = 0.0;
    bool degree_ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 3 + trial % 6;
        const auto cum = detail::random_cumulants(rng, m);
        for (int k = 1; k <= m - 2; ++k) {
            const Poly p = pk_polynomial(k, cum), a = ak_polynomial(k, m, cum);
            for (int d = 0; d <= 3 * k; ++d) diff = std::max(diff, std::abs(p[d] - a[d]));
            degree_ok &= p.degree() == 3 * k && p.lowest_power() >= k + 2;
        }
    }
    out.push_back(detail::check("a_k equals P_k for k <= m - 2", diff, 1e-14));
    out.push_back({"deg P_k = 3k and lowest power >= k + 2 when gamma_3 != 0", degree_ok, ""});

    const quad::Rule& gh = quad::gauss_hermite(96);
    double dual = 0.0, mass = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto cum = detail::random_cumulants(rng, 6);
        for (int k = 1; k <= 4; ++k) {
            const auto c = qk_hermite_coefficients(k, cum);
            const Poly p = pk_polynomial(k, cum);
            for (int it = 0; it <= 100; ++it) {
                const double t = -5.0 + 0.1 * it;
                cplx s{};
                for (std::size_t i = 0; i < gh.x.size(); ++i) {
                    const auto h = hermite_values(static_cast<int>(c.size()) - 1, gh.x[i]);
                    double q = 0.0;
                    for (std::size_t r = 0; r < c.size(); ++r) q += c[r] * h[r];
                    s += gh.w[i] * std::exp(cplx(0.0, t * gh.x[i])) * q;
                }
                s /= std::sqrt(2.0 * std::numbers::pi);
                dual = std::max(dual, std::abs(s - std::exp(-0.5 * t * t) * p(cplx(0.0, t))));
            }
        }
        const EdgeworthApproximant ap(ExpansionOrder(6.0), cum, 5);
        double integral = 0.0;
        for (std::size_t i = 0; i < gh.x.size(); ++i) integral += gh.w[i] * ap.phi(gh.x[i]) / std_normal_pdf(gh.x[i]);
        mass = std::max(mass, std::abs(integral / std::sqrt(2.0 * std::numbers::pi) - 1.0));
    }
    out.push_back(detail::check("Fourier transform of q_k equals e^{-t^2/2} P_k(it), k <= 4", dual, 1e-8));
    out.push_back(detail::check("phi_m integrates to 1", mass, 1e-10));

    double fp = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto cum = detail::random_cumulants(rng, 6);
        for (int m = 3; m <= 6; ++m) {
            std::vector<double> fed = cum.values();
            fed.resize(static_cast<std::size_t>(m));
            if (m >= 4) fed[3] += opt.perturb_gamma4;
            const auto back = tm_projection_check(CumulantVector(fed), m);
            for (int k = 1; k <= m; ++k) fp = std::max(fp, std::abs(back.gamma(k) - cum.gamma(k)));
        }
    }
    out.push_back(detail::check("projection T_m returns its input cumulants", fp, 1e-10));

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_ratio = 0.0, ident = 0.0;
    bool geometric = true;
    std::string guard_detail;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 3 + trial % 4;
        const auto cum = detail::random_cumulants(rng, m);
        cplx t(u(rng), u(rng)), z(u(rng), u(rng));
        if (std::abs(t) > 1.0) t /= std::abs(t);
        if (std::abs(z) > 1.0) z /= std::abs(z);
        const auto rep = tail_bound_check(cum, m, z, t, 15);
        if (!rep.tail_geometric) {
            geometric = false;
            guard_detail += "ratio " + detail::fmt(rep.tail_ratio) + " at |t| = " + detail::fmt(std::abs(t)) +
                            ", |z| = " + detail::fmt(std::abs(z)) + ", m = " + std::to_string(m) + "; ";
        }
        ident = std::max(ident, rep.identity_residual);
        if (rep.rhs > 0.0) worst_ratio = std::max(worst_ratio, std::max(rep.lhs, rep.remainder) / rep.rhs);
    }
    out.push_back(detail::check("exp(W_z) - 1 - sum_{k<=15} a_k z^k", ident, 1e-9));
    out.push_back(detail::check("tail sum over the bound (e^{C(z)} - 1)|t|^{m+1}", worst_ratio, 1.01));
    out.push_back({"truncated tails decay geometrically", geometric, guard_detail});
    return out;
}

inline std::vector<CheckResult> fractional_suite(const Options& = {}) {
    using namespace fractional;
    std::vector<CheckResult> out;
    double ei = 0.0, ed = 0.0;
    for (double lam : {0.5, 1.0, 2.0})
        for (double al : {0.25, 0.5, 0.75})
            for (double x : {0.5, 1.0, 3.0}) {
                auto y = [lam](double t) { return std::exp(-lam * t); };
                const double I = liouville_integral(Side::right, y, FractionalOrder(al), x);
                const double D = liouville_derivative(Side::right, y, FractionalOrder(al), x);
                ei = std::max(ei, std::abs(I / (std::pow(lam, -al) * std::exp(-lam * x)) - 1.0));
                ed = std::max(ed, std::abs(D / (std::pow(lam, al) * std::exp(-lam * x)) - 1.0));
            }
    out.push_back(detail::check("I^a_- e^{-lt} = l^{-a} e^{-lx} (27 cases, relative)", ei, 1e-6));
    out.push_back(detail::check("D^a_- e^{-lt} = l^{a} e^{-lx} (27 cases, relative)", ed, 1e-6));

    const std::vector<std::function<double(double)>> bumps = {
        [](double t) { return t * t * std::exp(-t); },
        [](double t) { return std::exp(-(t - 2.0) * (t - 2.0)); },
        [](double t) { return t * std::exp(-0.5 * t * t); },
    };
    double roundtrip = 0.0;
    const FractionalOrder a(0.4);
    for (const auto& y : bumps)
        for (double x : {0.5, 1.0, 2.5}) {
            auto Iy = [&](double s) { return left_integral(y, a.alpha, s); };
            roundtrip = std::max(roundtrip, std::abs(liouville_derivative(Side::left, Iy, a, x) - y(x)));
        }
    out.push_back(detail::check("D^a_{0+} I^a_{0+} y = y on three bumps", roundtrip, 1e-4));

    double parts = 0.0;
    {
        auto c1 = fractional_parts_identity_check([](double x) { return std::exp(-x); },
                                                  [](double x) { return x * x * std::exp(-x); }, FractionalOrder(0.5));
        auto c2 = fractional_parts_identity_check([](double x) { return std::exp(-(x - 2.0) * (x - 2.0)); },
                                                  [](double x) { return x * x * x * std::exp(-2.0 * x); },
                                                  FractionalOrder(0.3));
        for (const auto& c : {c1, c2}) parts = std::max(parts, c.discrepancy() / (1.0 + std::abs(c.lhs_re)));
    }
    out.push_back(detail::check("fractional integration by parts on two pairs", parts, 1e-6));

    double rel = 0.0;
    bool decay = true, decreasing = true;
    for (const auto& [V, m] : {std::pair{measures::dipole(), 0}, std::pair{measures::second_difference(), 1}}) {
        const auto rep = fractional_fourier_check(V, FractionalOrder(0.5), m, {0.5, 1.0, 3.0});
        rel = std::max(rel, rep.max_relative);
        decay &= rep.decay_bounded;
        decreasing &= scaled_decay_check(V, FractionalOrder(0.5), m, {1.0, 0.5, 0.25, 0.125}, {0.5, 1.0, 2.0, 4.0, 8.0})
                          .decreasing;
    }
    out.push_back(detail::check("Fourier relation for D^a_{0+} (V^ h), both atom measures", rel, 1e-5));
    out.push_back({"(1 + x)^a |D^a g| bounded on (0, 20]", decay, ""});
    out.push_back({"normalized eps(z) decreasing over z = 1, 1/2, 1/4, 1/8", decreasing, ""});
    return out;
}

inline std::vector<CheckResult> smoothing_suite(const Options& = {}) {
    std::vector<CheckResult> out;
    const auto model = models::chi2_1();
    const double h = aligned_spacing(model, 1.0 / 256);
    const auto rho = discretize(model, model_half_width(model, 16.0, 64.0), h);
    const auto d = threshold_split(rho, 0.5);
    out.push_back(detail::check("a p + b q reproduces rho", d.reconstruction_error(), 1e-10));
    out.push_back({"0 < b < c/2", d.b > 0.0 && d.b < 0.25, "b = " + detail::fmt(d.b)});
    BinomialSmoother s(d);
    bool tv_ok = true;
    std::string first_bad;
    for (int n = 4; n <= 20; ++n) {
        const auto r = s.report(n, 2);
        if (!(r.tv_gap <= r.bound_2beta)) {
            tv_ok = false;
            if (first_bad.empty()) first_bad = "n = " + std::to_string(n);
        }
    }
    out.push_back({"tv gap <= 2 beta_n for n = 4..20", tv_ok, first_bad});
    const auto n1 = first_rate_index(d.a, d.b, 2, 0.5);
    out.push_back({"beta_n < c^n / 2 from some n_1 <= 64 onward", n1.has_value(),
                   n1 ? "n_1 = " + std::to_string(*n1) : "never"});

    const auto um = models::uniform();
    const auto ur = discretize(um, 16.0, aligned_spacing(um, 1.0 / 256));
    BinomialSmoother su(threshold_split(ur, 0.5, true));
    const auto r = su.report(6, 2);
    out.push_back(detail::check("bounded density passes through unchanged", r.tv_gap, 0.0));
    return out;
}

inline std::vector<CheckResult> oracle_suite(const Options& = {}) {
    std::vector<CheckResult> out;
    double gap = 0.0, mass = 0.0, var = 0.0, sym = 0.0;
    for (const auto& model : {models::uniform(), models::exp1()})
        for (int n : {2, 4, 8, 16}) {
            const GridDensity conv = normalized_sum_native(model, n);
            const GridDensity inv = invert_charfn(model, n, 8.0, conv.h);
            for (std::size_t i = 0; i < inv.size(); ++i) gap = std::max(gap, std::abs(conv.at(inv.x(i)) - inv.values[i]));
            mass = std::max(mass, std::abs(conv.mass() + conv.lost_mass - 1.0));
            var = std::max(var, std::abs(conv.moment(2) - 1.0));
            if (model.name == "uniform")
                for (std::size_t i = 0; i < conv.size(); ++i)
                    sym = std::max(sym, std::abs(conv.values[i] - conv.values[conv.size() - 1 - i]));
        }
    out.push_back(detail::check("convolution and inversion agree on [-8, 8]", gap, 1e-4));
    out.push_back(detail::check("convolution conserves mass", mass, 1e-8));
    out.push_back(detail::check("second moment of rho_n is 1", var, 1e-3));
    out.push_back(detail::check("symmetric input stays symmetric", sym, 1e-10));

    const GridDensity g = invert_charfn(models::gaussian(), 4, 8.0, 1.0 / 64, {CutoffRule{}, 1e-12});
    double ge = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) ge = std::max(ge, std::abs(g.values[i] - std_normal_pdf(g.x(i))));
    out.push_back(detail::check("inversion recovers the Gaussian", ge, 1e-8));

    const auto probe = residual_probe(models::gaussian(), ExpansionOrder(4.0), {4, 16, 64, 256}, {0.2, 0.5, 1.0, 1.2});
    double pr = 0.0;
    for (double r : probe.residual) pr = std::max(pr, r);
    out.push_back(detail::check("residual probe vanishes on the Gaussian", pr, 1e-12));
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"cumulants", "edgeworth", "fractional", "smoothing", "oracle"};
    return names;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const Options& opt = {}) {
    if (name == "cumulants") return cumulants_suite(opt);
    if (name == "edgeworth") return edgeworth_suite(opt);
    if (name == "fractional") return fractional_suite(opt);
    if (name == "smoothing") return smoothing_suite(opt);
    if (name == "oracle") return oracle_suite(opt);
    if (name == "all") {
        std::vector<CheckResult> all;
        for (const auto& n : suite_names()) {
            auto part = run_suite(n, opt);
            for (auto& c : part) c.name = n + ": " + c.name;
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw ConfigurationError("unknown suite '" + name + "' (expected cumulants, edgeworth, fractional, smoothing, oracle, all)");
}

}  // namespace edgeworth::verify
