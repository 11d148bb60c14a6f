#pragma once

// Truncated formal power series. A series of order N keeps the coefficients
// of x^0..x^N; every operation truncates at the order of its result.

#include <complex>
#include <cstddef>
#include <vector>

#include "edgeworth/errors.hpp"

namespace edgeworth::series {

using Coeffs = std::vector<std::complex<double>>;

inline Coeffs truncate(Coeffs f, int order) {
    f.resize(static_cast<std::size_t>(order) + 1, std::complex<double>{});
    return f;
}

inline Coeffs multiply(const Coeffs& a, const Coeffs& b, int order) {
    Coeffs out(static_cast<std::size_t>(order) + 1, std::complex<double>{});
    for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(order); ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(order); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// log f, for f with a non-zero constant term.
inline Coeffs log(const Coeffs& f_in, int order) {
    const Coeffs f = truncate(f_in, order);
    if (f[0] == std::complex<double>{}) throw NumericError("series::log: zero constant term");
    Coeffs g(f.size(), std::complex<double>{});
    g[0] = std::log(f[0]);
    for (int k = 1; k <= order; ++k) {
        std::complex<double> acc = f[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j)
            acc -= (static_cast<double>(j) / k) * g[static_cast<std::size_t>(j)] *
                   f[static_cast<std::size_t>(k - j)];
        g[static_cast<std::size_t>(k)] = acc / f[0];
    }
    return g;
}

inline Coeffs exp(const Coeffs& g_in, int order) {
    const Coeffs g = truncate(g_in, order);
    Coeffs e(g.size(), std::complex<double>{});
    e[0] = std::exp(g[0]);
    for (int k = 1; k <= order; ++k) {
        std::complex<double> acc{};
        for (int j = 1; j <= k; ++j)
            acc += static_cast<double>(j) * g[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k - j)];
        e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }
    return e;
}

}  // namespace edgeworth::series
