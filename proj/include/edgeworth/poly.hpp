#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace edgeworth {

using cplx = std::complex<double>;

// Dense univariate polynomial, coeffs[i] multiplies x^i. Trailing zeros are
// trimmed, so the zero polynomial has no coefficients and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

    static Poly monomial(cplx c, int power) {
        std::vector<cplx> v(static_cast<std::size_t>(power) + 1, cplx{});
        v.back() = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    // Coefficient of x^i (zero beyond the degree).
    cplx operator[](int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(i)]
                                                                : cplx{};
    }

    // Lowest power with a non-zero coefficient; -1 for the zero polynomial.
    int lowest_power() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != cplx{}) return static_cast<int>(i);
        return -1;
    }

    template <typename X>
    auto operator()(X x) const {
        using R = decltype(cplx{} * x);
        R acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) { return *this += (-1.0) * o; }
    Poly& operator*=(cplx s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(cplx s, Poly p) { return p *= s; }
    friend Poly operator*(Poly p, cplx s) { return p *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{});
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(out));
    }

    // Substitute x -> s x.
    Poly scaled_argument(cplx s) const {
        std::vector<cplx> out = coeffs_;
        cplx f = 1.0;
        for (auto& c : out) {
            c *= f;
            f *= s;
        }
        return Poly(std::move(out));
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<cplx> out(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = static_cast<double>(i) * coeffs_[i];
        return Poly(std::move(out));
    }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
    }

    std::vector<cplx> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const cplx c = p[i];
        if (c == cplx{}) continue;
        if (!first) os << " + ";
        first = false;
        if (c.imag() == 0.0)
            os << c.real();
        else
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        if (i > 0) os << "*t^" << i;
    }
    return os;
}

}  // namespace edgeworth
