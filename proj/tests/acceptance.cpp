// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "edgeworth/edgeworth.hpp"

using namespace edgeworth;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

CumulantVector random_standardized(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> higher;
    for (int k = 3; k <= m; ++k) higher.push_back(u(rng));
    return CumulantVector::standardized_from_higher(higher);
}

// Cumulants as p! [x^p] log(1 + sum alpha_k x^k / k!), by the recurrence
// k c_k = k f_k - sum_{j<k} j c_j f_{k-j} for g = log f, f_0 = 1.
std::vector<double> series_log_cumulants(const std::vector<double>& alpha) {
    const int m = static_cast<int>(alpha.size());
    std::vector<double> f(m + 1, 0.0), c(m + 1, 0.0);
    double fact = 1.0;
    f[0] = 1.0;
    for (int k = 1; k <= m; ++k) {
        fact *= k;
        f[k] = alpha[k - 1] / fact;
    }
    std::vector<double> out(m);
    fact = 1.0;
    for (int k = 1; k <= m; ++k) {
        double s = k * f[k];
        for (int j = 1; j < k; ++j) s -= j * c[j] * f[k - j];
        c[k] = s / k;
        fact *= k;
        out[k - 1] = c[k] * fact;
    }
    return out;
}

Outcome ac1() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto cum = random_standardized(rng, 4);
        const double g3 = cum.gamma(3), g4 = cum.gamma(4);
        const Poly p1 = pk_polynomial(1, cum), p2 = pk_polynomial(2, cum);
        std::vector<double> e1(4, 0.0), e2(7, 0.0);
        e1[3] = g3 / 6.0;
        e2[6] = g3 * g3 / 72.0;
        e2[4] = g4 / 24.0;
        if (p1.degree() != 3 || p2.degree() != 6) return {false, "wrong degree"};
        for (int d = 0; d <= 3; ++d) worst = std::max(worst, std::abs(p1[d] - e1[d]));
        for (int d = 0; d <= 6; ++d) worst = std::max(worst, std::abs(p2[d] - e2[d]));
    }
    return {worst <= 1e-14, "max coefficient error " + fmt("%.3g", worst) + " (limit 1e-14)"};
}

Outcome ac2() {
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + trial % 8;
        std::vector<double> a(m);
        for (double& v : a) v = u(rng);
        const auto got = cumulants_from_moments(MomentVector(a));
        const auto ref = series_log_cumulants(a);
        for (int k = 1; k <= m; ++k)
            worst = std::max(worst, std::abs(got.gamma(k) - ref[k - 1]) / std::max(1.0, std::abs(ref[k - 1])));
    }
    return {worst <= 1e-10, "max relative difference " + fmt("%.3g", worst) + " (limit 1e-10)"};
}

Outcome ac3() {
    std::mt19937_64 rng(103);
    const auto& r = quad::gauss_hermite(96);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto cum = random_standardized(rng, 6);
        for (int k = 1; k <= 4; ++k) {
            const auto q = qk_density_term(k, cum);
            const Poly p = pk_polynomial(k, cum);
            std::vector<double> qv(r.x.size());
            for (std::size_t i = 0; i < r.x.size(); ++i) qv[i] = q(r.x[i]) / std::exp(-0.5 * r.x[i] * r.x[i]);
            for (int j = 0; j <= 200; ++j) {
                const double t = -5.0 + 0.05 * j;
                cplx s{};
                for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::exp(cplx(0.0, t * r.x[i])) * qv[i];
                worst = std::max(worst, std::abs(s - std::exp(-0.5 * t * t) * p(cplx(0.0, t))));
            }
        }
    }
    return {worst < 1e-8, "sup error " + fmt("%.3g", worst) + " (limit 1e-8)"};
}

Outcome ac4() {
    std::mt19937_64 rng(104);
    double worst = 0.0;
    for (int m = 3; m <= 6; ++m)
        for (int trial = 0; trial < 20; ++trial) {
            const auto cum = random_standardized(rng, m);
            const auto back = tm_projection_check(cum, m);
            for (int k = 1; k <= m; ++k) worst = std::max(worst, std::abs(back.gamma(k) - cum.gamma(k)));
        }
    return {worst <= 1e-10, "max deviation " + fmt("%.3g", worst) + " (limit 1e-10)"};
}

Outcome ac5() {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double ratio = 0.0, ident = 0.0;
    int guard_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 3 + trial % 4;
        const auto cum = random_standardized(rng, m);
        cplx t(u(rng), u(rng)), z(u(rng), u(rng));
        if (std::abs(t) > 1.0) t /= std::abs(t);
        if (std::abs(z) > 1.0) z /= std::abs(z);
        const auto rep = tail_bound_check(cum, m, z, t, 15);
        if (!rep.tail_geometric) ++guard_fail;
        ident = std::max(ident, rep.identity_residual);
        if (rep.rhs > 0.0) ratio = std::max(ratio, std::max(rep.lhs, rep.remainder) / rep.rhs);
        else if (rep.lhs > 0.0 || rep.remainder > 1e-15) ratio = INFINITY;
    }
    const bool ok = ratio <= 1.01 && guard_fail == 0 && ident < 1e-9;
    return {ok, "max tail/bound " + fmt("%.3g", ratio) + " (limit 1.01), identity residual " + fmt("%.3g", ident) +
                    ", guard failures " + std::to_string(guard_fail)};
}

Outcome ac6() {
    double worst = 0.0;
    for (const auto& model : {models::uniform(), models::exp1()})
        for (int n : {2, 4, 8, 16}) {
            const auto conv = normalized_sum_native(model, n);
            const auto inv = invert_charfn(model, n, 8.0, conv.h);
            for (std::size_t i = 0; i < inv.size(); ++i)
                worst = std::max(worst, std::abs(conv.at(inv.x(i)) - inv.values[i]));
        }
    return {worst < 1e-4, "max gap " + fmt("%.3g", worst) + " (limit 1e-4)"};
}

std::string slope_text(const SlopeFit& f) {
    return f.defined ? fmt("%.3f", f.slope) + " +- " + fmt("%.3f", f.std_error) : std::string("undefined");
}

Outcome ac7() {
    ExperimentConfig cfg;
    cfg.model = "uniform";
    cfg.s = 4.0;
    cfg.m = 4;
    cfg.n_list = {4, 8, 16, 32, 64, 128, 256};
    const auto r = run_rates(cfg);
    const SlopeFit& w = r.sup_fit[1];  // weight |x|^m, m = 4
    const bool ok = w.defined && r.tv_fit.defined && std::abs(w.slope + 1.0) <= 0.2 && std::abs(r.tv_fit.slope + 1.0) <= 0.2;
    return {ok, "weighted slope " + slope_text(w) + ", tv slope " + slope_text(r.tv_fit) + " (target -1 +- 0.2)"};
}

Outcome ac8() {
    ExperimentConfig cfg;
    cfg.model = "student_t";
    cfg.s = 4.2;
    cfg.m = 4;
    cfg.n_list = {8, 16, 32, 64, 128, 256};
    const auto r = run_rates(cfg);
    const SlopeFit& w = r.sup_fit[1];
    const double limit = -(cfg.s - 2.0) / 2.0 + 0.25;
    return {w.defined && w.slope <= limit, "weighted slope " + slope_text(w) + " (limit <= " + fmt("%.2f", limit) + ")"};
}

Outcome ac9() {
    using namespace fractional;
    double eig = 0.0;
    for (double lam : {0.5, 1.0, 2.0})
        for (double al : {0.25, 0.5, 0.75})
            for (double x : {0.5, 1.0, 3.0}) {
                auto y = [lam](double t) { return std::exp(-lam * t); };
                const double e = std::exp(-lam * x);
                eig = std::max(eig, std::abs(liouville_integral(Side::right, y, FractionalOrder(al), x) /
                                                 (std::pow(lam, -al) * e) - 1.0));
                eig = std::max(eig, std::abs(liouville_derivative(Side::right, y, FractionalOrder(al), x) /
                                                 (std::pow(lam, al) * e) - 1.0));
            }

    const FractionalOrder a(0.4);
    const std::vector<std::function<double(double)>> bumps = {
        [](double t) { return t * t * std::exp(-t); },
        [](double t) { return std::exp(-(t - 2.0) * (t - 2.0)); },
        [](double t) { return t * std::exp(-0.5 * t * t); },
    };
    double round = 0.0;
    for (const auto& y : bumps)
        for (double x : {0.5, 1.0, 2.5}) {
            auto Iy = [&](double s) { return left_integral(y, a.alpha, s); };
            round = std::max(round, std::abs(liouville_derivative(Side::left, Iy, a, x) - y(x)));
        }

    double parts = 0.0;
    for (const auto& c :
         {fractional_parts_identity_check([](double x) { return std::exp(-x); },
                                          [](double x) { return x * x * std::exp(-x); }, FractionalOrder(0.5)),
          fractional_parts_identity_check([](double x) { return std::exp(-(x - 2.0) * (x - 2.0)); },
                                          [](double x) { return x * x * x * std::exp(-2.0 * x); }, FractionalOrder(0.3))})
        parts = std::max(parts, c.discrepancy() / (1.0 + std::abs(c.lhs_re)));

    double four = 0.0;
    bool decreasing = true;
    for (const auto& [V, m] : {std::pair{measures::dipole(), 0}, std::pair{measures::second_difference(), 1}}) {
        four = std::max(four, fractional_fourier_check(V, FractionalOrder(0.5), m, {0.5, 1.0, 3.0}).max_relative);
        decreasing &= scaled_decay_check(V, FractionalOrder(0.5), m, {1.0, 0.5, 0.25, 0.125}, {0.5, 1.0, 2.0, 4.0, 8.0})
                          .decreasing;
    }
    const bool ok = eig < 1e-6 && round < 1e-4 && parts < 1e-6 && four < 1e-5 && decreasing;
    return {ok, "eigen " + fmt("%.2g", eig) + ", roundtrip " + fmt("%.2g", round) + ", parts " + fmt("%.2g", parts) +
                    ", Fourier " + fmt("%.2g", four) + ", decay " + (decreasing ? "decreasing" : "NOT decreasing")};
}

Outcome ac10() {
    const auto model = models::chi2_1();
    const auto rho = discretize(model, model_half_width(model, 16.0, 64.0), aligned_spacing(model, 1.0 / 256));
    const double c = 0.5;
    BinomialSmoother s(threshold_split(rho, c));
    const auto& d = s.decomposition();
    int tv_bad = 0;
    for (int n = 4; n <= 20; ++n)
        if (!(s.report(n, 2).tv_gap <= s.report(n, 2).bound_2beta)) ++tv_bad;
    const auto n1 = first_rate_index(d.a, d.b, 2, c);
    bool rate_ok = n1.has_value();
    if (n1)
        for (int n = *n1; n <= kMaxSmoothingN; ++n) rate_ok &= beta_n(n, 2, d.a, d.b) < 0.5 * std::pow(c, n);

    const auto um = models::uniform();
    const auto ur = discretize(um, 16.0, aligned_spacing(um, 1.0 / 256));
    BinomialSmoother su(threshold_split(ur, c, um.bounded_density));
    bool identical = true;
    for (int n = 4; n <= 8; ++n) {
        const auto r = su.report(n, 2);
        identical &= r.tv_gap == 0.0 && r.beta_n == 0.0;
    }
    const bool ok = tv_bad == 0 && rate_ok && identical;
    return {ok, "tv_gap > 2 beta_n at " + std::to_string(tv_bad) + " of 17 n, n_1 = " +
                    (n1 ? std::to_string(*n1) : std::string("none")) + ", bounded input " +
                    (identical ? "unchanged" : "CHANGED")};
}

Outcome ac11() {
    const std::vector<int> n{4, 8, 16, 32, 64, 128, 256};
    const std::vector<double> t{0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
    const auto g = residual_probe(models::gaussian(), ExpansionOrder(4.0), n, t);
    double gmax = 0.0;
    for (double r : g.residual) gmax = std::max(gmax, r);
    const auto u = residual_probe(models::uniform(), ExpansionOrder(4.0), n, t);
    bool monotone = true;
    for (std::size_t i = n.size() / 2 + 1; i < n.size(); ++i) monotone &= u.scaled_residual[i] <= u.scaled_residual[i - 1];
    return {gmax < 1e-12 && monotone, "Gaussian residual " + fmt("%.3g", gmax) + ", uniform R(n) n scaled " +
                                          (monotone ? "non-increasing" : "INCREASING") + " on the upper half"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* what;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {"AC1", "closed forms of P_1 and P_2", 1, ac1},
        {"AC2", "partition cumulants equal series-log cumulants", 5, ac2},
        {"AC3", "Fourier duality of q_k and P_k", 5, ac3},
        {"AC4", "projection fixed point", 10, ac4},
        {"AC5", "cumulant-expansion tail bound", 10, ac5},
        {"AC6", "convolution and inversion oracles agree", 60, ac6},
        {"AC7", "uniform rate, s = m = 4", 300, ac7},
        {"AC8", "Student-t rate, s = 4.2", 300, ac8},
        {"AC9", "fractional calculus identities", 60, ac9},
        {"AC10", "binomial smoothing of chi-square(1)", 120, ac10},
        {"AC11", "residual probe", 120, ac11},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = o.ok && secs < c.limit_s;
        if (!ok) ++failed;
        std::printf("%-4s %s  %s: %s [%.2f s, limit %.0f s]\n", c.id, ok ? "PASS" : "FAIL", c.what, o.detail.c_str(), secs,
                    c.limit_s);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
