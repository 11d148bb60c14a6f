#pragma once

// Error of phi_m against the true density of the normalized sum, over a
// list of n, with log-log slope fits.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "edgeworth/charfun.hpp"
#include "edgeworth/errors.hpp"
#include "edgeworth/expansion.hpp"
#include "edgeworth/fit.hpp"
#include "edgeworth/gridoracle.hpp"

namespace edgeworth {

struct ExperimentConfig {
    std::string model = "uniform";
    double s = 4.0;
    int m = 0;  // 0 means floor(s)
    std::vector<int> n_list{4, 8, 16, 32, 64, 128, 256};
    double L = 12.0;         // half-width of the comparison grid
    double h = 1.0 / 64;     // spacing of the comparison grid
    std::string cutoff = "auto";
    double tail_budget = 1e-11;
    std::vector<double> weights;  // extra weight powers beyond 0, m, s
    std::string out;

    int order_m() const { return m > 0 ? m : static_cast<int>(std::floor(s)); }

    void validate() const {
        const DistributionModel md = model_by_name(model);
        try {
            ExpansionOrder(s, order_m());
        } catch (const PreconditionError& e) {
            throw ConfigurationError(std::string("config: ") + e.what());
        }
        if (s > md.s_max)
            throw ConfigurationError("config: s = " + num_text(s) + " exceeds the moment order " +
                                     num_text(md.s_max) + " of model " + model);
        if (n_list.empty()) throw ConfigurationError("config: n_list is empty");
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            if (n_list[i] < 2) throw ConfigurationError("config: every n must be at least 2");
            if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigurationError("config: n_list must be strictly ascending");
        }
        if (!(L > 0.0) || !(h > 0.0) || h > L) throw ConfigurationError("config: need 0 < h <= L");
        if (!(tail_budget > 0.0)) throw ConfigurationError("config: tail_budget must be positive");
        CutoffRule::parse(cutoff);
        for (double w : weights)
            if (!(w >= 0.0)) throw ConfigurationError("config: weight powers must be non-negative");
    }
};

struct RateRow {
    int n = 0;
    std::vector<double> sup_err;  // one per weight power, in RateResult::weights order
    std::vector<bool> boundary;   // maximum at the grid edge
    double tv_err = 0.0;
    double oracle_gap = 0.0;
};

struct RateResult {
    std::vector<double> weights;  // 0, m, s, then extras
    std::vector<RateRow> rows;
    std::vector<SlopeFit> sup_fit;
    SlopeFit tv_fit;
    double oracle_budget = 0.0;
    double noise_floor = 0.0;
    std::vector<double> column_floor;  // noise floor of each weighted column
};

// Oracle cross-check tolerances: the convolution grid truncates heavy tails,
// so Student-t gets a looser budget on both gap and dropped mass.
inline double oracle_gap_budget(const DistributionModel& model) { return model.name == "student_t" ? 1e-3 : 1e-4; }

inline RateResult run_rates(const ExperimentConfig& cfg) {
    cfg.validate();
    const DistributionModel model = model_by_name(cfg.model);
    const int m = cfg.order_m();
    const ExpansionOrder order(cfg.s, m);
    const CumulantVector cum = model.cumulants(m);

    RateResult res;
    res.weights = {0.0, static_cast<double>(m), cfg.s};
    res.weights.insert(res.weights.end(), cfg.weights.begin(), cfg.weights.end());
    res.oracle_budget = oracle_gap_budget(model);
    // Errors within a decade of the inversion tail budget are oracle noise.
    res.noise_floor = std::max(1e-12, 10.0 * cfg.tail_budget);

    InversionOptions inv_opt;
    inv_opt.cutoff = CutoffRule::parse(cfg.cutoff);
    inv_opt.tail_budget = cfg.tail_budget;

    for (int n : cfg.n_list) {
        const GridDensity inv = invert_charfn(model, n, cfg.L, cfg.h, inv_opt);
        GridOptions g;
        g.L_max = std::max(64.0, 8.0 * std::sqrt(static_cast<double>(n)));
        g.mass_budget = model.name == "student_t" ? 1e-5 : 1e-6;
        const GridDensity conv = normalized_sum_native(model, n, g);

        RateRow row;
        row.n = n;
        for (std::size_t i = 0; i < inv.size(); ++i)
            row.oracle_gap = std::max(row.oracle_gap, std::abs(conv.at(inv.x(i)) - inv.values[i]));
        if (row.oracle_gap > res.oracle_budget)
            throw NumericError("rates: oracles disagree by " + num_text(row.oracle_gap) + " at n = " +
                               std::to_string(n) + " for model " + model.name + " (budget " +
                               num_text(res.oracle_budget) + ")");

        const EdgeworthApproximant approx(order, cum, n);
        for (double w : res.weights) {
            const WeightedError e = nonuniform_error(inv, approx, w);
            row.sup_err.push_back(e.value);
            row.boundary.push_back(e.boundary_flag);
        }
        row.tv_err = tv_error(inv, approx);
        res.rows.push_back(std::move(row));
    }

    std::vector<double> col(res.rows.size());
    for (std::size_t w = 0; w < res.weights.size(); ++w) {
        for (std::size_t i = 0; i < res.rows.size(); ++i) col[i] = res.rows[i].sup_err[w];
        // The weight magnifies oracle noise by up to 1 + L^w at the grid edge.
        const double floor_w = res.noise_floor * (res.weights[w] == 0.0 ? 1.0 : 1.0 + std::pow(cfg.L, res.weights[w]));
        res.column_floor.push_back(floor_w);
        res.sup_fit.push_back(fit_loglog(cfg.n_list, col, true, floor_w));
    }
    for (std::size_t i = 0; i < res.rows.size(); ++i) col[i] = res.rows[i].tv_err;
    res.tv_fit = fit_loglog(cfg.n_list, col, true, res.noise_floor);
    return res;
}

}  // namespace edgeworth
