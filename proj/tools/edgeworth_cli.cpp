// edgeworth: command-line driver for expansions, rate experiments, invariant
// suites and the smoothing demo.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgeworth/edgeworth.hpp"

using namespace edgeworth;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvariant = 1, kConfig = 2, kNumeric = 3 };

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Comma list of integers; a token "a..b" expands to every integer in [a, b].
std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    try {
        while (std::getline(ss, tok, ',')) {
            const auto dots = tok.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stoi(tok));
            } else {
                const int a = std::stoi(tok.substr(0, dots)), b = std::stoi(tok.substr(dots + 2));
                for (int v = a; v <= b; ++v) out.push_back(v);
            }
        }
    } catch (const std::exception&) {
        throw ConfigurationError("bad integer list '" + s + "'");
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    try {
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    } catch (const std::exception&) {
        throw ConfigurationError("bad number list '" + s + "'");
    }
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigurationError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_provenance(std::ostream& os, const json& canonical) {
    const std::string text = canonical.dump();
    os << "# config_hash=" << hex64(fnv1a(text)) << "\n";
    os << "# config=" << text << "\n";
}

// ---- rates ----

json config_to_json(const ExperimentConfig& c) {
    return json{{"model", c.model}, {"s", c.s},       {"m", c.order_m()},
                {"n_list", c.n_list}, {"L", c.L},     {"h", c.h},
                {"cutoff", c.cutoff}, {"tail_budget", c.tail_budget}, {"weights", c.weights}};
}

void apply_json(ExperimentConfig& c, const json& j) {
    static const std::set<std::string> known{"model", "s", "m", "n_list", "L", "h", "cutoff", "tail_budget", "weights", "out"};
    if (!j.is_object()) throw ConfigurationError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigurationError("config: unknown key '" + key + "'");
    try {
        if (j.contains("model")) c.model = j.at("model").get<std::string>();
        if (j.contains("s")) c.s = j.at("s").get<double>();
        if (j.contains("m")) c.m = j.at("m").get<int>();
        if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<int>>();
        if (j.contains("L")) c.L = j.at("L").get<double>();
        if (j.contains("h")) c.h = j.at("h").get<double>();
        if (j.contains("cutoff")) c.cutoff = j.at("cutoff").get<std::string>();
        if (j.contains("tail_budget")) c.tail_budget = j.at("tail_budget").get<double>();
        if (j.contains("weights")) c.weights = j.at("weights").get<std::vector<double>>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("config: ") + e.what());
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigurationError("config file '" + path + "': " + e.what());
    }
}

// Columns 0..2 are the fixed weights 0, m, s; extras are named by power.
std::string weight_label(double w, std::size_t index) {
    if (index == 0) return "sup_err_w0";
    if (index == 1) return "sup_err_wm";
    if (index == 2) return "sup_err_ws";
    return "sup_err_w" + short_num(w);
}

void slope_line(std::ostream& os, const std::string& column, const SlopeFit& f) {
    os << "# slope " << column << " = ";
    if (f.defined)
        os << num(f.slope) << " +- " << num(f.std_error) << " (" << f.points << " points)\n";
    else
        os << "undefined (errors at the oracle noise floor or too few points)\n";
}

int cmd_rates(const ExperimentConfig& cfg) {
    const RateResult r = run_rates(cfg);
    Output out(cfg.out);
    std::ostream& os = out.os();
    write_provenance(os, config_to_json(cfg));
    os << "n";
    for (std::size_t w = 0; w < r.weights.size(); ++w) os << "," << weight_label(r.weights[w], w);
    os << ",tv_err,oracle_gap\n";
    for (const auto& row : r.rows) {
        os << row.n;
        for (double e : row.sup_err) os << "," << num(e);
        os << "," << num(row.tv_err) << "," << num(row.oracle_gap) << "\n";
    }
    for (std::size_t w = 0; w < r.weights.size(); ++w)
        slope_line(os, weight_label(r.weights[w], w), r.sup_fit[w]);
    slope_line(os, "tv_err", r.tv_fit);
    for (const auto& row : r.rows)
        for (std::size_t w = 0; w < row.boundary.size(); ++w)
            if (row.boundary[w] && row.sup_err[w] > r.column_floor[w])
                os << "# note: n = " << row.n << " " << weight_label(r.weights[w], w)
                   << " peaks at the edge of the grid\n";
    return kOk;
}

// ---- expand ----

std::string poly_text(const Poly& p, const char* var) {
    double scale = 0.0;
    for (int d = 0; d <= p.degree(); ++d) scale = std::max(scale, std::abs(p[d]));
    std::string s;
    for (int d = p.degree(); d >= 0; --d) {
        const double c = p[d].real();
        if (std::abs(c) <= 1e-14 * scale || c == 0.0) continue;
        s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        s += short_num(std::abs(c));
        if (d > 0) s += std::string(" ") + var + (d > 1 ? "^" + std::to_string(d) : "");
    }
    return s.empty() ? "0" : s;
}

int cmd_expand(const std::string& model_name, int m) {
    const DistributionModel model = model_by_name(model_name);
    if (m < 2) throw ConfigurationError("expand: m must be at least 2");
    if (m > model.s_max)
        throw ConfigurationError("expand: m = " + std::to_string(m) + " exceeds the moment order of " + model.name);
    const CumulantVector cum = model.cumulants(m);
    std::ostream& os = std::cout;
    os << "model " << model.name << ", m = " << m << "\n\n";
    os << "standardized cumulants\n";
    for (int k = 3; k <= m; ++k) os << "  gamma_" << k << " = " << short_num(cum.gamma(k)) << "\n";
    if (m == 2) os << "  (none above order 2)\n";

    os << "\npolynomials P_k(t)\n";
    for (int k = 1; k <= m - 2; ++k) {
        const Poly p = pk_polynomial(k, cum);
        os << "  P_" << k << "(t) = " << poly_text(p, "t") << "\n";
        os << "    power  coefficient\n";
        for (int d = k + 2; d <= 3 * k; ++d) os << "    " << d << "      " << short_num(p[d].real()) << "\n";
    }

    os << "\ndensity terms q_k(x) = phi(x) sum_r c_r He_r(x)\n";
    for (int k = 1; k <= m - 2; ++k) {
        const auto c = qk_hermite_coefficients(k, cum);
        std::string s;
        for (std::size_t r = 0; r < c.size(); ++r) {
            if (c[r] == 0.0) continue;
            s += s.empty() ? (c[r] < 0 ? "-" : "") : (c[r] < 0 ? " - " : " + ");
            s += short_num(std::abs(c[r])) + " He_" + std::to_string(r) + "(x)";
        }
        os << "  q_" << k << "(x) = phi(x) [" << (s.empty() ? "0" : s) << "]\n";
    }
    return kOk;
}

// ---- verify ----

int cmd_verify(const std::string& suite, double perturb) {
    verify::Options opt;
    opt.perturb_gamma4 = perturb;
    const auto results = verify::run_suite(suite, opt);
    const verify::CheckResult* first = nullptr;
    for (const auto& c : results) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
        std::cout << "\n";
        if (!c.passed && !first) first = &c;
    }
    std::size_t passed = 0;
    for (const auto& c : results) passed += c.passed;
    std::cout << passed << "/" << results.size() << " checks passed\n";
    if (first) {
        std::cerr << "first failure: " << first->name << (first->detail.empty() ? "" : " (" + first->detail + ")") << "\n";
        return kInvariant;
    }
    return kOk;
}

// ---- smooth-demo ----

struct SmoothConfig {
    std::string model = "chi2_1";
    double c = 0.5;
    int m = 2;
    std::vector<int> n_list = parse_int_list("4..20");
    double h = 1.0 / 256;
    std::string out;
};

int cmd_smooth_demo(const SmoothConfig& cfg) {
    if (!(cfg.c > 0.0 && cfg.c < 1.0)) throw ConfigurationError("smooth-demo: c must lie in (0, 1)");
    if (cfg.m < 0) throw ConfigurationError("smooth-demo: m must be non-negative");
    if (!(cfg.h > 0.0)) throw ConfigurationError("smooth-demo: h must be positive");
    const DistributionModel model = model_by_name(cfg.model);
    const double h = aligned_spacing(model, cfg.h);
    const GridDensity rho = discretize(model, model_half_width(model, 16.0, 64.0), h);
    BinomialSmoother smoother(threshold_split(rho, cfg.c, model.bounded_density));
    const auto& d = smoother.decomposition();

    Output out(cfg.out);
    std::ostream& os = out.os();
    write_provenance(os, json{{"model", cfg.model}, {"c", cfg.c}, {"m", cfg.m}, {"n_list", cfg.n_list}, {"h", cfg.h}});
    os << "# M=" << num(d.M) << " a=" << num(d.a) << " b=" << num(d.b) << (d.trivial ? " (bounded density, trivial split)" : "")
       << "\n";
    const auto n1 = d.trivial ? std::optional<int>(cfg.m + 2) : first_rate_index(d.a, d.b, cfg.m, cfg.c);
    os << "# n_1=" << (n1 ? std::to_string(*n1) : "none up to " + std::to_string(kMaxSmoothingN)) << "\n";
    os << "n,beta_n,tv_gap,c^n\n";
    int status = kOk;
    for (int n : cfg.n_list) {
        if (n < cfg.m + 2) {
            os << "# skipped n=" << n << ": needs n >= m + 2\n";
            continue;
        }
        const auto r = smoother.report(n, cfg.m);
        os << n << "," << num(r.beta_n) << "," << num(r.tv_gap) << "," << num(std::pow(cfg.c, n)) << "\n";
        if (!(r.tv_gap <= r.bound_2beta)) {
            std::cerr << "smooth-demo: tv_gap " << r.tv_gap << " exceeds 2 beta_n = " << r.bound_2beta << " at n = " << n
                      << "\n";
            status = kInvariant;
        }
        if (n1 && n >= *n1 && !(r.beta_n < 0.5 * std::pow(cfg.c, n))) {
            std::cerr << "smooth-demo: beta_n >= c^n / 2 at n = " << n << " beyond n_1\n";
            status = kInvariant;
        }
    }
    return status;
}

// ---- fractional-check ----

int cmd_fractional_check(const std::vector<double>& lambdas, const std::vector<double>& alphas,
                         const std::vector<double>& xs, const std::string& out_path) {
    using namespace fractional;
    Output out(out_path);
    std::ostream& os = out.os();
    write_provenance(os, json{{"lambda", lambdas}, {"alpha", alphas}, {"x", xs}});
    os << "lambda,alpha,x,integral,integral_exact,derivative,derivative_exact,max_rel_err\n";
    int status = kOk;
    for (double lam : lambdas)
        for (double al : alphas)
            for (double x : xs) {
                if (!(lam > 0.0)) throw ConfigurationError("fractional-check: lambda must be positive");
                auto y = [lam](double t) { return std::exp(-lam * t); };
                const FractionalOrder a(al);
                const double I = liouville_integral(Side::right, y, a, x);
                const double D = liouville_derivative(Side::right, y, a, x);
                const double Ie = std::pow(lam, -al) * std::exp(-lam * x), De = std::pow(lam, al) * std::exp(-lam * x);
                const double rel = std::max(std::abs(I / Ie - 1.0), std::abs(D / De - 1.0));
                os << num(lam) << "," << num(al) << "," << num(x) << "," << num(I) << "," << num(Ie) << "," << num(D)
                   << "," << num(De) << "," << num(rel) << "\n";
                if (!(rel < 1e-6)) status = kInvariant;
            }
    for (const auto& c : verify::fractional_suite()) {
        if (c.name.rfind("I^a_-", 0) == 0 || c.name.rfind("D^a_-", 0) == 0) continue;  // covered by the table
        os << "# " << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]")
           << "\n";
        if (!c.passed) status = kInvariant;
    }
    return status;
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const BoundsError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const ArityError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edgeworth expansions for densities of normalized sums"};
    app.require_subcommand(1);
    int status = kOk;

    // expand
    auto* expand = app.add_subcommand("expand", "Print cumulants, P_k and q_k for a model");
    std::string ex_model;
    int ex_m = 0;
    expand->add_option("--model", ex_model, "gaussian, uniform, exp1, student_t, chi2_1")->required();
    expand->add_option("--m", ex_m, "expansion order m")->required();
    expand->callback([&] { status = guarded([&] { return cmd_expand(ex_model, ex_m); }); });

    // rates
    auto* rates = app.add_subcommand("rates", "Error of phi_m against rho_n over a list of n, as CSV");
    std::string config_path, r_model, r_nlist, r_cutoff, r_weights, r_out;
    double r_s = 0.0, r_L = 0.0, r_h = 0.0, r_budget = 0.0;
    int r_m = 0;
    rates->add_option("--config", config_path, "JSON file with experiment fields");
    rates->add_option("--model", r_model, "distribution model");
    rates->add_option("--s", r_s, "moment order s");
    rates->add_option("--m", r_m, "expansion order m (default floor(s))");
    rates->add_option("--n-list", r_nlist, "comma list of n, a..b ranges allowed");
    rates->add_option("--L", r_L, "half-width of the comparison grid");
    rates->add_option("--spacing", r_h, "spacing of the comparison grid (config key h)");
    rates->add_option("--cutoff", r_cutoff, "inversion cutoff rule: auto, fixed:T, scaled:c (T = c n^{1/6})");
    rates->add_option("--tail-budget", r_budget, "bound on the discarded inversion tail");
    rates->add_option("--weights", r_weights, "extra weight powers, comma list");
    rates->add_option("--out", r_out, "CSV path (default stdout)");
    rates->callback([&] {
        status = guarded([&] {
            ExperimentConfig cfg;
            if (!config_path.empty()) apply_json(cfg, load_json(config_path));
            if (rates->count("--model")) cfg.model = r_model;
            if (rates->count("--s")) cfg.s = r_s;
            if (rates->count("--m")) cfg.m = r_m;
            if (rates->count("--n-list")) cfg.n_list = parse_int_list(r_nlist);
            if (rates->count("--L")) cfg.L = r_L;
            if (rates->count("--spacing")) cfg.h = r_h;
            if (rates->count("--cutoff")) cfg.cutoff = r_cutoff;
            if (rates->count("--tail-budget")) cfg.tail_budget = r_budget;
            if (rates->count("--weights")) cfg.weights = parse_real_list(r_weights);
            if (rates->count("--out")) cfg.out = r_out;
            return cmd_rates(cfg);
        });
    });

    // verify
    auto* ver = app.add_subcommand("verify", "Run an invariant suite");
    std::string suite = "all";
    double perturb = 0.0;
    ver->add_option("suite", suite, "cumulants, edgeworth, fractional, smoothing, oracle or all");
    ver->add_option("--perturb-gamma4", perturb, "shift gamma_4 of the projection fixtures (mutation test)");
    ver->callback([&] { status = guarded([&] { return cmd_verify(suite, perturb); }); });

    // smooth-demo
    auto* smooth = app.add_subcommand("smooth-demo", "Binomial smoothing of an unbounded density, as CSV");
    SmoothConfig sc;
    std::string s_nlist;
    smooth->add_option("--model", sc.model, "distribution model (default chi2_1)");
    smooth->add_option("--c", sc.c, "rate constant c in (0, 1)");
    smooth->add_option("--m", sc.m, "number of dropped low-order terms minus 2");
    smooth->add_option("--n-list", s_nlist, "comma list of n, a..b ranges allowed (default 4..20)");
    smooth->add_option("--spacing", sc.h, "grid spacing before normalization");
    smooth->add_option("--out", sc.out, "CSV path (default stdout)");
    smooth->callback([&] {
        status = guarded([&] {
            if (!s_nlist.empty()) sc.n_list = parse_int_list(s_nlist);
            return cmd_smooth_demo(sc);
        });
    });

    // fractional-check
    auto* frac = app.add_subcommand("fractional-check", "Fractional calculus identities, as CSV");
    std::string f_lambda = "0.5,1,2", f_alpha = "0.25,0.5,0.75", f_x = "0.5,1,3", f_out;
    frac->add_option("--lambda", f_lambda, "exponential rates");
    frac->add_option("--alpha", f_alpha, "orders in (0, 1)");
    frac->add_option("--x", f_x, "evaluation points > 0");
    frac->add_option("--out", f_out, "CSV path (default stdout)");
    frac->callback([&] {
        status = guarded([&] {
            return cmd_fractional_check(parse_real_list(f_lambda), parse_real_list(f_alpha), parse_real_list(f_x), f_out);
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }
    return status;
}
