#pragma once

// Expansion polynomials P_k and a_k, density corrections q_k, and the
// approximants phi_m (density side) and u_m, e_m (Fourier side).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "edgeworth/combinatorics.hpp"
#include "edgeworth/cumulants.hpp"
#include "edgeworth/errors.hpp"
#include "edgeworth/poly.hpp"
#include "edgeworth/series.hpp"

namespace edgeworth {

inline double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

struct ExpansionOrder {
    double s = 2.0;
    int m = 2;
    double alpha_frac = 0.0;

    ExpansionOrder() = default;
    explicit ExpansionOrder(double s_in) : ExpansionOrder(s_in, static_cast<int>(std::floor(s_in))) {}
    ExpansionOrder(double s_in, int m_in) : s(s_in), m(m_in), alpha_frac(s_in - m_in) {
        if (!(s >= 2.0)) throw PreconditionError("ExpansionOrder: s must be at least 2");
        if (m < 2 || m > static_cast<int>(std::floor(s)))
            throw PreconditionError("ExpansionOrder: m must lie in [2, floor(s)]");
    }
};

namespace detail {

// prod_j (1/p_j!) (gamma_{j+2}/(j+2)!)^{p_j} for a weighted partition.
inline double partition_weight(const WeightedPartition& part, const CumulantVector& cum) {
    double w = 1.0;
    for (std::size_t r = 0; r < part.counts.size(); ++r) {
        const int c = part.counts[r];
        if (c == 0) continue;
        const int j = static_cast<int>(r) + 1;
        const double g = cum.gamma(j + 2) / factorial(j + 2);
        w *= std::pow(g, c) / factorial(c);
    }
    return w;
}

// Sum over partitions of k whose parts are all <= max_part.
inline Poly partition_polynomial(int k, int max_part, const CumulantVector& cum) {
    std::vector<cplx> coeffs(static_cast<std::size_t>(3 * k) + 1, cplx{});
    for (const auto& part : enumerate_weighted_partitions(k)) {
        bool admissible = true;
        for (std::size_t r = static_cast<std::size_t>(max_part); r < part.counts.size(); ++r)
            if (part.counts[r] != 0) admissible = false;
        if (!admissible) continue;
        coeffs[static_cast<std::size_t>(k + 2 * part.parts())] += partition_weight(part, cum);
    }
    return Poly(std::move(coeffs));
}

}  // namespace detail

// P_k(t) = sum over (p_1..p_k) of prod (1/p_j!)(gamma_{j+2}/(j+2)!)^{p_j} t^{k + 2 sum p_j}.
inline Poly pk_polynomial(int k, const CumulantVector& cum) {
    cum.require_standardized("pk_polynomial");
    if (k < 1 || k > cum.order() - 2)
        throw BoundsError("pk_polynomial: k must lie in [1, " + std::to_string(cum.order() - 2) + "], got " +
                          std::to_string(k));
    return detail::partition_polynomial(k, k, cum);
}

// Coefficient of z^k in exp(W_z(t)) with t replaced by the polynomial
// variable; only parts up to m - 2 contribute.
inline Poly ak_polynomial(int k, int m, const CumulantVector& cum) {
    if (k < 1 || k > kMaxPartitionOrder) throw BoundsError("ak_polynomial: k out of range");
    if (m < 3 || m > cum.order()) throw BoundsError("ak_polynomial: need 3 <= m <= number of cumulants");
    return detail::partition_polynomial(k, m - 2, cum);
}

// W_z(t) = sum_{k=1}^{m-2} (gamma_{k+2}/(k+2)!) (it)^{k+2} z^k.
template <typename T, typename Z>
cplx w_z(const CumulantVector& cum, T t, Z z, int m) {
    if (m > cum.order()) throw BoundsError("w_z: m exceeds the number of cumulants");
    const cplx it = cplx(0.0, 1.0) * cplx(t);
    cplx acc{}, zk = 1.0;
    for (int k = 1; k <= m - 2; ++k) {
        zk *= cplx(z);
        acc += cum.gamma(k + 2) / factorial(k + 2) * std::pow(it, k + 2) * zk;
    }
    return acc;
}

// Hermite-form coefficients of q_k: q_k(x) = phi(x) sum_r c[r] H_r(x).
inline std::vector<double> qk_hermite_coefficients(int k, const CumulantVector& cum) {
    cum.require_standardized("qk_density_term");
    if (k < 1 || k > cum.order() - 2) throw BoundsError("qk_density_term: k out of range");
    std::vector<double> c(static_cast<std::size_t>(3 * k) + 1, 0.0);
    for (const auto& part : enumerate_weighted_partitions(k))
        c[static_cast<std::size_t>(k + 2 * part.parts())] += detail::partition_weight(part, cum);
    return c;
}

inline std::function<double(double)> qk_density_term(int k, const CumulantVector& cum) {
    auto c = qk_hermite_coefficients(k, cum);
    return [c = std::move(c)](double x) {
        const auto h = hermite_values(static_cast<int>(c.size()) - 1, x);
        double acc = 0.0;
        for (std::size_t r = 0; r < c.size(); ++r) acc += c[r] * h[r];
        return std_normal_pdf(x) * acc;
    };
}

class EdgeworthApproximant {
public:
    EdgeworthApproximant(ExpansionOrder order, CumulantVector cum, int n)
        : order_(order), cum_(std::move(cum)), n_(n) {
        if (n < 1) throw PreconditionError("EdgeworthApproximant: n must be positive");
        cum_.require_standardized("EdgeworthApproximant");
        if (cum_.order() < order_.m) throw ArityError("EdgeworthApproximant: need cumulants up to order m");
        for (int k = 1; k <= order_.m - 2; ++k) {
            hermite_.push_back(qk_hermite_coefficients(k, cum_));
            pk_.push_back(pk_polynomial(k, cum_));
        }
    }

    const ExpansionOrder& order() const { return order_; }
    const CumulantVector& cumulants() const { return cum_; }
    int n() const { return n_; }
    const Poly& pk(int k) const { return pk_.at(static_cast<std::size_t>(k - 1)); }

    // phi_m(x) = phi(x) + sum_{k=1}^{m-2} q_k(x) n^{-k/2}.
    double phi(double x) const {
        if (hermite_.empty()) return std_normal_pdf(x);
        const auto h = hermite_values(3 * (order_.m - 2), x);
        const double z = 1.0 / std::sqrt(static_cast<double>(n_));
        double acc = 1.0, zk = 1.0;
        for (const auto& c : hermite_) {
            zk *= z;
            double term = 0.0;
            for (std::size_t r = 0; r < c.size(); ++r) term += c[r] * h[r];
            acc += zk * term;
        }
        return std_normal_pdf(x) * acc;
    }

    // u_m(t, z) = e^{-t^2/2} (1 + sum_{k=1}^{m-2} P_k(it) z^k).
    cplx u(double t, double z) const {
        const cplx it(0.0, t);
        cplx acc = 1.0, zk = 1.0;
        for (const auto& p : pk_) {
            zk *= z;
            acc += p(it) * zk;
        }
        return std::exp(-0.5 * t * t) * acc;
    }

    // Fourier transform of phi_m: u_m(t, n^{-1/2}).
    cplx fourier(double t) const { return u(t, 1.0 / std::sqrt(static_cast<double>(n_))); }

private:
    ExpansionOrder order_;
    CumulantVector cum_;
    int n_;
    std::vector<std::vector<double>> hermite_;
    std::vector<Poly> pk_;
};

inline double phi_m(const EdgeworthApproximant& approx, double x) { return approx.phi(x); }
inline cplx u_m_fourier(const EdgeworthApproximant& approx, double t, double z) { return approx.u(t, z); }
inline cplx e_m(const EdgeworthApproximant& approx, double t) { return approx.u(t, 1.0); }

// Cumulants of e_m(t) = e^{-t^2/2}(1 + sum P_k(it)) recovered by expanding
// log e_m at the origin to order m.
inline CumulantVector tm_projection_check(const CumulantVector& cum, int m) {
    if (m < 3 || m > cum.order()) throw BoundsError("tm_projection_check: need 3 <= m <= number of cumulants");
    cum.require_standardized("tm_projection_check");
    series::Coeffs f(static_cast<std::size_t>(m) + 1, cplx{});
    f[0] = 1.0;
    const cplx i(0.0, 1.0);
    for (int k = 1; k <= m - 2; ++k) {
        // P_k(it) as a series in t.
        const Poly p = pk_polynomial(k, cum).scaled_argument(i);
        for (int d = 0; d <= std::min(p.degree(), m); ++d) f[static_cast<std::size_t>(d)] += p[d];
    }
    series::Coeffs g = series::log(f, m);
    g[2] -= 0.5;
    std::vector<double> out(static_cast<std::size_t>(m));
    for (int p = 1; p <= m; ++p)
        out[static_cast<std::size_t>(p - 1)] = (g[static_cast<std::size_t>(p)] * factorial(p) / std::pow(i, p)).real();
    return CumulantVector(std::move(out));
}

struct TailBoundReport {
    double lhs = 0.0;        // sum_{k=m-1}^{K} |a_k(it) z^k|
    double rhs = 0.0;        // (e^{C(z)} - 1) |t|^{m+1}
    double remainder = 0.0;  // |exp(W_z(t)) - 1 - sum_{k<=m-2} a_k(it) z^k|
    double identity_residual = 0.0;  // |exp(W_z(t)) - 1 - sum_{k<=K} a_k(it) z^k|
    double tail_ratio = 0.0;         // |term_K| / |term_{K-1}|
    bool tail_geometric = true;
};

inline double c_of_z(const CumulantVector& cum, int m, double abs_z) {
    double c = 0.0;
    for (int k = 3; k <= m; ++k) c += std::abs(cum.gamma(k)) / factorial(k) * std::pow(abs_z, k - 2);
    return c;
}

inline TailBoundReport tail_bound_check(const CumulantVector& cum, int m, cplx z, cplx t, int K) {
    if (std::abs(t) > 1.0 + 1e-12) throw PreconditionError("tail_bound_check: |t| must not exceed 1");
    if (K < m - 1) throw PreconditionError("tail_bound_check: K must be at least m - 1");
    if (m < 3 || m > cum.order()) throw BoundsError("tail_bound_check: need 3 <= m <= number of cumulants");
    const cplx it = cplx(0.0, 1.0) * t;

    TailBoundReport rep;
    cplx partial = 1.0, head = 1.0, zk = 1.0;
    double prev_term = 0.0, last_term = 0.0;
    for (int k = 1; k <= K; ++k) {
        zk *= z;
        const cplx term = ak_polynomial(k, m, cum)(it) * zk;
        partial += term;
        if (k <= m - 2)
            head += term;
        else
            rep.lhs += std::abs(term);
        prev_term = last_term;
        last_term = std::abs(term);
    }
    const double cz = c_of_z(cum, m, std::abs(z));
    rep.rhs = std::expm1(cz) * std::pow(std::abs(t), m + 1);
    const cplx ew = std::exp(w_z(cum, t, z, m));
    rep.remainder = std::abs(ew - head);
    rep.identity_residual = std::abs(ew - partial);
    rep.tail_ratio = prev_term > 0.0 ? last_term / prev_term : 0.0;
    // Consecutive a_k z^k need not shrink monotonically; a last term that is
    // negligible against the retained tail also settles the truncation.
    rep.tail_geometric = rep.tail_ratio < 0.5 || last_term <= 1e-9 * rep.lhs || last_term <= 1e-16;
    return rep;
}

}  // namespace edgeworth
