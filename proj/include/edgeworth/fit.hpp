#pragma once

// Least-squares slope of log(error) against log(n).

#include <cmath>
#include <limits>
#include <vector>

#include "edgeworth/errors.hpp"

namespace edgeworth {

struct SlopeFit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double std_error = std::numeric_limits<double>::quiet_NaN();
    int points = 0;
    bool defined = false;  // false when too few points or errors at the noise floor
};

// Fits over entries i >= n.size()/2 when upper_half is set.
inline SlopeFit fit_loglog(const std::vector<int>& n, const std::vector<double>& err, bool upper_half = true,
                           double noise_floor = 1e-12) {
    if (n.size() != err.size()) throw ArityError("fit_loglog: n and err differ in length");
    const std::size_t start = upper_half ? n.size() / 2 : 0;
    std::vector<double> lx, ly;
    bool noisy = false;
    for (std::size_t i = start; i < n.size(); ++i) {
        if (!(err[i] > noise_floor)) {
            noisy = true;
            continue;
        }
        lx.push_back(std::log(static_cast<double>(n[i])));
        ly.push_back(std::log(err[i]));
    }
    SlopeFit f;
    f.points = static_cast<int>(lx.size());
    if (noisy || lx.size() < 2) return f;
    const double k = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / k, my += ly[i] / k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    f.slope = sxy / sxx;
    if (lx.size() > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            const double r = ly[i] - my - f.slope * (lx[i] - mx);
            rss += r * r;
        }
        f.std_error = std::sqrt(rss / (k - 2.0) / sxx);
    } else {
        f.std_error = 0.0;
    }
    f.defined = true;
    return f;
}

}  // namespace edgeworth
