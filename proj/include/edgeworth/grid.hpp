#pragma once

// Uniformly sampled densities on a symmetric grid x_i = (i - N) h.

#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "edgeworth/charfun.hpp"
#include "edgeworth/errors.hpp"
#include "edgeworth/fft.hpp"

namespace edgeworth {

struct GridDensity {
    double h = 0.0;
    int half = 0;  // N; the grid has 2N + 1 points and half-width L = N h
    std::vector<double> values;
    // Probability mass dropped when the grid was cut (convolution) or an
    // upper bound on the truncation error of the construction (inversion).
    double lost_mass = 0.0;
    double error_bound = 0.0;

    GridDensity() = default;
    GridDensity(double spacing, int n_half) : h(spacing), half(n_half), values(2 * static_cast<std::size_t>(n_half) + 1, 0.0) {
        if (!(spacing > 0.0)) throw PreconditionError("GridDensity: spacing must be positive");
        if (n_half < 0) throw PreconditionError("GridDensity: negative half size");
    }

    static GridDensity sample(const std::function<double(double)>& f, double L, double h) {
        GridDensity g(h, static_cast<int>(std::ceil(L / h - 1e-9)));
        for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = f(g.x(i));
        return g;
    }

    std::size_t size() const { return values.size(); }
    double L() const { return half * h; }
    double x(std::size_t i) const { return (static_cast<double>(i) - half) * h; }

    double mass() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s * h;
    }
    double moment(int k) const {
        double s = 0.0;
        for (std::size_t i = 0; i < size(); ++i) s += std::pow(x(i), k) * values[i];
        return s * h;
    }
    double sup_abs() const {
        double s = 0.0;
        for (double v : values) s = std::max(s, std::abs(v));
        return s;
    }

    // Four-point Lagrange interpolation; zero outside the grid.
    double at(double xq) const {
        const double u = xq / h + half;
        if (u < 0.0 || u > static_cast<double>(size() - 1)) return 0.0;
        const long n = static_cast<long>(size());
        long i = static_cast<long>(std::floor(u)) - 1;
        i = std::clamp(i, 0L, std::max(0L, n - 4));
        if (n < 4) return values[static_cast<std::size_t>(std::lround(u))];
        const double s = u - static_cast<double>(i);
        const double* v = values.data() + i;
        return -v[0] * (s - 1) * (s - 2) * (s - 3) / 6 + v[1] * s * (s - 2) * (s - 3) / 2 -
               v[2] * s * (s - 1) * (s - 3) / 2 + v[3] * s * (s - 1) * (s - 2) / 6;
    }

    GridDensity operator-(const GridDensity& o) const {
        if (o.half != half || std::abs(o.h - h) > 1e-15 * h) throw PreconditionError("GridDensity: grids differ");
        GridDensity d(h, half);
        for (std::size_t i = 0; i < size(); ++i) d.values[i] = values[i] - o.values[i];
        return d;
    }
};

inline void write_csv(std::ostream& os, const GridDensity& g) {
    os << "x,value\n";
    char buf[64];
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.x(i), g.values[i]);
        os << buf;
    }
}

inline GridDensity read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "x,value") throw ConfigurationError("read_csv: missing header");
    std::vector<double> xs, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigurationError("read_csv: malformed row '" + line + "'");
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 2 || xs.size() % 2 == 0) throw ConfigurationError("read_csv: need an odd number of rows");
    GridDensity g((xs.back() - xs.front()) / static_cast<double>(xs.size() - 1), static_cast<int>(xs.size() / 2));
    g.values = std::move(vs);
    return g;
}

// Spacing close to h that puts the first density breakpoint on a cell
// boundary, so cell averages never straddle a jump.
inline double aligned_spacing(const DistributionModel& model, double h) {
    for (double b : model.breakpoints) {
        const double a = std::abs(b);
        if (a == 0.0) continue;
        return a / (std::ceil(a / h - 0.5) + 0.5);
    }
    return h;
}

// Cell averages (F(x + h/2) - F(x - h/2)) / h of the model on [-L, L].
inline GridDensity discretize(const DistributionModel& model, double L, double h) {
    GridDensity g(h, static_cast<int>(std::ceil(L / h - 1e-9)));
    double prev = model.cdf(g.x(0) - 0.5 * h);
    const double below = prev;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double next = model.cdf(g.x(i) + 0.5 * h);
        g.values[i] = (next - prev) / h;
        prev = next;
    }
    g.lost_mass = below + (1.0 - prev);
    return g;
}

// Linear convolution h sum_j f(x_j) g(x - x_j), cut back to half-width
// L_max; the dropped mass accumulates in lost_mass.
inline GridDensity convolve(const GridDensity& f, const GridDensity& g, double L_max) {
    if (std::abs(f.h - g.h) > 1e-14 * f.h) throw PreconditionError("convolve: grid spacings differ");
    auto raw = fft::linear_convolve(f.values, g.values);
    const int full = f.half + g.half;
    const int keep = std::min(full, static_cast<int>(std::floor(L_max / f.h + 1e-9)));
    GridDensity out(f.h, keep);
    double dropped = 0.0;
    for (int i = 0; i < static_cast<int>(raw.size()); ++i) {
        const int j = i - full + keep;
        const double v = raw[static_cast<std::size_t>(i)] * f.h;
        if (j < 0 || j >= static_cast<int>(out.size()))
            dropped += std::abs(v);
        else
            out.values[static_cast<std::size_t>(j)] = v;
    }
    out.lost_mass = f.lost_mass + g.lost_mass + dropped * f.h;
    return out;
}

}  // namespace edgeworth
