#include "cli.hpp"

#include "gaussn/criterion.hpp"
#include "gaussn/errors.hpp"
#include "gaussn/information.hpp"
#include "gaussn/models.hpp"
#include "gaussn/posterior.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace gaussn::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string model;
    double sigma = 1.0;
    std::string format;
    double quad_tol = 0.0;  // 0: not given on the command line
    std::string out_path;

    // fisher
    std::optional<double> xi;
    // criterion, posterior
    double threshold = kDefaultThreshold;
    std::string mode = "paper_rounding";
    // table
    std::vector<std::size_t> n_list;
    // posterior
    double xi_true = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t grid_size = kDefaultGridSize;
    std::string grid_out;
    // verify
    std::string suite = "all";
};

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

QuadratureConfig resolve_quadrature(const Options& opt) {
    QuadratureConfig cfg = default_config_from_env();
    if (opt.quad_tol > 0) cfg = cfg.with_tolerance(opt.quad_tol);
    return cfg;
}

CriterionMode parse_mode(const std::string& mode) {
    if (mode == "strict") return CriterionMode::strict;
    if (mode == "paper_rounding") return CriterionMode::paper_rounding;
    throw InputError("mode must be strict or paper_rounding");
}

const char* mode_name(CriterionMode mode) {
    return mode == CriterionMode::strict ? "strict" : "paper_rounding";
}

json criterion_json(const CriterionReport& r) {
    return json{
        {"model", std::string(model_name(r.model))},
        {"n", r.n},
        {"fisher", r.fisher},
        {"sigma", r.sigma},
        {"halfwidth", r.halfwidth},
        {"remainder_order", r.remainder_order},
        {"h_max", r.h_max},
        {"ratio", r.ratio},
        {"ratio_raw", r.ratio_raw},
        {"threshold", r.threshold},
        {"mode", mode_name(r.mode)},
        {"passes", r.passes},
    };
}

std::string envelope(const std::string& command, const Options& opt, json parameters, json results) {
    json doc{
        {"command", command},
        {"model", opt.model},
        {"parameters", std::move(parameters)},
        {"results", std::move(results)},
        {"tool_version", kToolVersion},
    };
    return doc.dump(2) + "\n";
}

std::string key_value_csv(const json& flat) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [key, value] : flat.items()) {
        os << key << ',';
        if (value.is_number_float()) {
            os << num17(value.get<double>());
        } else if (value.is_string()) {
            os << value.get<std::string>();
        } else {
            os << value.dump();
        }
        os << '\n';
    }
    return os.str();
}

json common_parameters(const Options& opt, const QuadratureConfig& cfg) {
    json p{{"quad_tol", cfg.abs_tol}};
    if (opt.model == "gauss") p["sigma"] = opt.sigma;
    return p;
}

ModelSpec model_from(const Options& opt) {
    return ModelSpec::make(parse_model_name(opt.model), opt.sigma);
}

std::string cmd_fisher(const Options& opt) {
    const ModelSpec model = model_from(opt);
    const QuadratureConfig cfg = resolve_quadrature(opt);
    const double xi = opt.xi.value_or(0.0);
    const double gradient = fisher_gradient_form(model, xi, cfg);
    const double curvature = fisher_curvature_form(model, xi, cfg);
    json results{
        {"xi", xi},
        {"gradient_form", gradient},
        {"curvature_form", curvature},
        {"discrepancy", std::abs(gradient - curvature)},
        {"analytic_fisher", *model.analytic_fisher},
        {"prior_measure", prior_measure(model)},
    };
    if (opt.format == "csv") return key_value_csv(results);
    json params = common_parameters(opt, cfg);
    params["xi"] = xi;
    return envelope("fisher", opt, params, results);
}

std::string cmd_criterion(const Options& opt) {
    const ModelSpec model = model_from(opt);
    const CriterionMode mode = parse_mode(opt.mode);
    const std::size_t n = minimal_n(model, opt.threshold, mode);
    const CriterionReport report = criterion_report(model, n, opt.threshold, mode);
    json results{{"minimal_n", n}, {"report", criterion_json(report)}};
    if (opt.format == "csv") {
        json flat = criterion_json(report);
        flat["minimal_n"] = n;
        return key_value_csv(flat);
    }
    json params = common_parameters(opt, resolve_quadrature(opt));
    params["threshold"] = opt.threshold;
    params["mode"] = mode_name(mode);
    return envelope("criterion", opt, params, results);
}

std::string cmd_table(const Options& opt) {
    const ModelSpec model = model_from(opt);
    const auto rows = table_rows(model, opt.n_list);
    if (opt.format != "json") {
        std::ostringstream os;
        os << "N,ratio_raw,ratio_3dp\n";
        for (const auto& r : rows) os << r.n << ',' << num17(r.ratio_raw) << ',' << num3(r.ratio_3dp) << '\n';
        return os.str();
    }
    json list = json::array();
    for (const auto& r : rows) list.push_back({{"N", r.n}, {"ratio_raw", r.ratio_raw}, {"ratio_3dp", num3(r.ratio_3dp)}});
    json params = common_parameters(opt, resolve_quadrature(opt));
    params["n"] = opt.n_list;
    return envelope("table", opt, params, json{{"rows", list}});
}

std::string grid_csv(const PosteriorGrid& post, const PosteriorGrid& ref) {
    std::ostringstream os;
    os << "xi,density,gaussian_density\n";
    for (std::size_t i = 0; i < post.xi_values.size(); ++i) {
        os << num17(post.xi_values[i]) << ',' << num17(post.densities[i]) << ',' << num17(ref.densities[i]) << '\n';
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file '" + path + "'");
    f << content;
}

std::string cmd_posterior(const Options& opt) {
    const ModelSpec model = model_from(opt);
    if (opt.n == 0) throw InputError("--n must be at least 1");
    const CriterionMode mode = parse_mode(opt.mode);
    const Observations obs = sample(model, opt.xi_true, opt.n, opt.seed);
    const MlEstimate ml = ml_estimate(model, obs);
    const PosteriorGrid post = posterior_from_observations(model, obs, opt.grid_size);
    const double fisher = fisher_information(model);
    const PosteriorGrid ref = gaussian_reference_on(post.xi_values, ml.value, fisher, opt.n);
    const ComparisonReport cmp = compare_to_gaussian(post, ref);
    const CriterionReport crit = criterion_report(model, opt.n, opt.threshold, mode);

    const std::string grid = grid_csv(post, ref);
    if (!opt.grid_out.empty()) write_file(opt.grid_out, grid);
    if (opt.format == "csv") return grid;

    json results{
        {"xi_ml", ml.value},
        {"ml_ambiguous", ml.ambiguous},
        {"ml_twins", ml.twins},
        {"fisher", fisher},
        {"comparison",
         {{"sup_log_deviation", cmp.sup_log_deviation},
          {"kl_to_gaussian", cmp.kl_to_gaussian},
          {"interval", {cmp.interval.first, cmp.interval.second}}}},
        {"criterion", criterion_json(crit)},
    };
    json params = common_parameters(opt, resolve_quadrature(opt));
    params["xi_true"] = opt.xi_true;
    params["n"] = opt.n;
    params["seed"] = opt.seed;
    params["grid_size"] = opt.grid_size;
    params["threshold"] = opt.threshold;
    params["mode"] = mode_name(mode);
    return envelope("posterior", opt, params, results);
}

std::string cmd_verify(const Options& opt, bool& all_passed) {
    const QuadratureConfig cfg = resolve_quadrature(opt);
    const auto checks = run_verify_suite(opt.suite, cfg.abs_tol);
    std::size_t passed = 0;
    json list = json::array();
    for (const auto& c : checks) {
        passed += c.passed ? 1 : 0;
        list.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"value", c.value},
                        {"expected", c.expected},
                        {"tolerance", c.tolerance}});
    }
    all_passed = passed == checks.size();
    json params{{"suite", opt.suite}, {"quad_tol", cfg.abs_tol}};
    json results{{"checks", list}, {"passed", passed}, {"total", checks.size()}, {"ok", all_passed}};
    const std::string report = envelope("verify", opt, params, results);
    if (opt.format == "json") return report;

    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << '[' << c.suite << "] " << c.name << ": value " << num17(c.value)
           << ", expected " << num17(c.expected) << " +- " << c.tolerance << '\n';
    }
    os << passed << '/' << checks.size() << " checks passed\n";
    return os.str();
}

void add_common(CLI::App* sub, Options& opt, bool needs_model, const std::string& default_format) {
    if (needs_model) {
        sub->add_option("--model", opt.model, "chi2log | gauss | trig | binom")
            ->required()
            ->check(CLI::IsMember({"chi2log", "gauss", "trig", "binom"}));
        sub->add_option("--sigma", opt.sigma, "standard deviation of the gauss model")
            ->check(CLI::PositiveNumber);
    }
    opt.format = default_format;
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--quad-tol", opt.quad_tol, "absolute and relative quadrature tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_path, "write the output to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimal sample size for the Gaussian approximation of translation-model posteriors", "gaussn"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Options opt;

    CLI::App* fisher = app.add_subcommand("fisher", "Fisher information by both definitions");
    add_common(fisher, opt, true, "json");
    fisher->add_option("--xi", opt.xi, "parameter value (default 0)");

    CLI::App* criterion = app.add_subcommand("criterion", "minimal N for the Gaussian approximation");
    add_common(criterion, opt, true, "json");
    criterion->add_option("--threshold", opt.threshold, "remainder threshold in (0, 1)");
    criterion->add_option("--mode", opt.mode, "strict | paper_rounding")
        ->check(CLI::IsMember({"strict", "paper_rounding"}));

    CLI::App* table = app.add_subcommand("table", "remainder ratio for a list of N");
    add_common(table, opt, true, "csv");
    table->add_option("--n", opt.n_list, "comma-separated list of N")->required()->delimiter(',');

    CLI::App* posterior = app.add_subcommand("posterior", "sample data and compare its posterior with the Gaussian");
    add_common(posterior, opt, true, "json");
    posterior->add_option("--xi-true", opt.xi_true, "parameter used to generate the data")->required();
    posterior->add_option("--n", opt.n, "number of observations")->required();
    posterior->add_option("--seed", opt.seed, "random seed");
    posterior->add_option("--grid-size", opt.grid_size, "posterior grid points (>= 201)");
    posterior->add_option("--grid-out", opt.grid_out, "write the posterior grid as CSV");
    posterior->add_option("--threshold", opt.threshold, "criterion threshold");
    posterior->add_option("--mode", opt.mode, "strict | paper_rounding")
        ->check(CLI::IsMember({"strict", "paper_rounding"}));

    CLI::App* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
    add_common(verify, opt, false, "text");
    verify->add_option("--suite", opt.suite, "all | fisher | h | table1 | quadrature")
        ->check(CLI::IsMember({"all", "fisher", "h", "table1", "quadrature"}));

    std::vector<const char*> argv{"gaussn"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::Success&) {
        // help on the app or on a subcommand
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    int code = kExitOk;
    try {
        std::string output;
        if (fisher->parsed()) {
            output = cmd_fisher(opt);
        } else if (criterion->parsed()) {
            output = cmd_criterion(opt);
        } else if (table->parsed()) {
            output = cmd_table(opt);
        } else if (posterior->parsed()) {
            output = cmd_posterior(opt);
        } else {
            bool ok = false;
            output = cmd_verify(opt, ok);
            if (!ok) code = kExitVerificationFailed;
        }
        if (opt.out_path.empty()) {
            out << output;
        } else {
            write_file(opt.out_path, output);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << " (best estimate " << num17(e.best_estimate()) << ")\n";
        return kExitNumerical;
    }
    return code;
}

}  // namespace gaussn::cli
