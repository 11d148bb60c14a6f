#pragma once

// Thin FFTW wrappers: linear convolution of real sequences and a complex
// forward DFT. Planning is serialized; execution uses per-call buffers.

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "edgeworth/errors.hpp"

namespace edgeworth::fft {

namespace detail {

inline std::mutex& plan_mutex() {
    static std::mutex mu;
    return mu;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using Buffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
Buffer<T> alloc(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
    if (!p) throw NumericError("fft: allocation failed");
    return Buffer<T>(p);
}

}  // namespace detail

// Smallest size >= n whose only prime factors are 2, 3, 5, 7.
inline std::size_t good_size(std::size_t n) {
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

// out[k] = sum_i a[i] b[k - i], length a.size() + b.size() - 1.
inline std::vector<double> linear_convolve(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t len = a.size() + b.size() - 1;
    const std::size_t n = good_size(len);
    const std::size_t nc = n / 2 + 1;
    auto ra = detail::alloc<double>(n), rb = detail::alloc<double>(n);
    auto ca = detail::alloc<fftw_complex>(nc), cb = detail::alloc<fftw_complex>(nc);
    detail::Plan fa, fb, inv;
    {
        std::lock_guard lock(detail::plan_mutex());
        fa.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), ra.get(), ca.get(), FFTW_ESTIMATE));
        fb.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), rb.get(), cb.get(), FFTW_ESTIMATE));
        inv.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), ca.get(), ra.get(), FFTW_ESTIMATE));
    }
    if (!fa || !fb || !inv) throw NumericError("fft: planning failed");
    std::fill(ra.get(), ra.get() + n, 0.0);
    std::fill(rb.get(), rb.get() + n, 0.0);
    std::copy(a.begin(), a.end(), ra.get());
    std::copy(b.begin(), b.end(), rb.get());
    fftw_execute(fa.get());
    fftw_execute(fb.get());
    for (std::size_t k = 0; k < nc; ++k) {
        const double re = ca[k][0] * cb[k][0] - ca[k][1] * cb[k][1];
        const double im = ca[k][0] * cb[k][1] + ca[k][1] * cb[k][0];
        ca[k][0] = re;
        ca[k][1] = im;
    }
    fftw_execute(inv.get());
    std::vector<double> out(len);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < len; ++k) out[k] = ra[k] * scale;
    return out;
}

// X_l = sum_j x_j exp(-2 pi i j l / N).
inline std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    auto in = detail::alloc<fftw_complex>(n), out = detail::alloc<fftw_complex>(n);
    detail::Plan plan;
    {
        std::lock_guard lock(detail::plan_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    }
    if (!plan) throw NumericError("fft: planning failed");
    for (std::size_t j = 0; j < n; ++j) {
        in[j][0] = x[j].real();
        in[j][1] = x[j].imag();
    }
    fftw_execute(plan.get());
    std::vector<std::complex<double>> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = {out[j][0], out[j][1]};
    return y;
}

}  // namespace edgeworth::fft
