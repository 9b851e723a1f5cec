#include "cli.hpp"

#include "gaussn/criterion.hpp"
#include "gaussn/divergence.hpp"
#include "gaussn/errors.hpp"
#include "gaussn/information.hpp"
#include "gaussn/kernels.hpp"
#include "gaussn/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace gaussn::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Chi-squared criterion table: N and the ratio printed to 3 decimals.
constexpr std::array<std::pair<std::size_t, double>, 14> kChiSquaredTable = {{
    {3, 3.263}, {4, 2.241}, {5, 1.711}, {10, 0.817}, {20, 0.437}, {30, 0.316}, {40, 0.254},
    {50, 0.216}, {75, 0.163}, {100, 0.135}, {150, 0.104}, {155, 0.102}, {160, 0.100}, {165, 0.098},
}};

VerifyCheck make_check(const std::string& suite, std::string name, double value, double expected, double tol) {
    return {suite, std::move(name), std::abs(value - expected) <= tol, value, expected, tol};
}

void fisher_suite(std::vector<VerifyCheck>& out, const QuadratureConfig& cfg) {
    for (ModelId id : {ModelId::ChiSquaredLog, ModelId::GaussianShift, ModelId::TrigTranslational,
                       ModelId::BinomialTrigIRF}) {
        const ModelSpec m = ModelSpec::make(id);
        const std::vector<double> probes =
            m.is_line_model() ? kernels::linspace(-3.0, 3.0, 10) : kernels::linspace(-1.4, 1.4, 10);
        const double expected = *m.analytic_fisher;
        double worst_gradient = expected;
        double worst_curvature = expected;
        for (double xi : probes) {
            const double g = fisher_gradient_form(m, xi, cfg);
            const double c = fisher_curvature_form(m, xi, cfg);
            if (std::abs(g - expected) > std::abs(worst_gradient - expected)) worst_gradient = g;
            if (std::abs(c - expected) > std::abs(worst_curvature - expected)) worst_curvature = c;
        }
        const std::string name(model_name(id));
        out.push_back(make_check("fisher", name + " gradient form", worst_gradient, expected, 1e-5));
        out.push_back(make_check("fisher", name + " curvature form", worst_curvature, expected, 1e-5));
    }
}

void h_suite(std::vector<VerifyCheck>& out, const QuadratureConfig& cfg) {
    for (ModelId id : {ModelId::ChiSquaredLog, ModelId::GaussianShift, ModelId::TrigTranslational}) {
        const ModelSpec m = ModelSpec::make(id);
        const double reach = id == ModelId::TrigTranslational ? kPi : 3.0;
        double worst = 0.0;
        double worst_value = 0.0;
        double worst_expected = 0.0;
        bool nonpositive = true;
        for (double d : kernels::linspace(-reach, reach, 21)) {
            const double q = h_functional(m, d, cfg).value;
            const double c = h_closed_form(m, d);
            if (std::abs(q - c) >= worst) {
                worst = std::abs(q - c);
                worst_value = q;
                worst_expected = c;
            }
            if (q > 0.0 || (d != 0.0 && q == 0.0 && std::abs(c) > 1e-12)) nonpositive = false;
        }
        const std::string name(model_name(id));
        out.push_back(make_check("h", name + " quadrature vs closed form", worst_value, worst_expected, 1e-7));
        out.push_back({"h", name + " H <= 0, zero only at delta = 0", nonpositive, nonpositive ? 1.0 : 0.0, 1.0, 0.0});
    }
    const ModelSpec trig = ModelSpec::make(ModelId::TrigTranslational);
    const std::array<double, 4> anchors = {0.0, -4.0, 0.0, 16.0};
    for (int order = 1; order <= 4; ++order) {
        out.push_back(make_check("h", "trig H^(" + std::to_string(order) + ")(0)",
                                 h_derivative_numeric(trig, order, 0.0, cfg), anchors[order - 1],
                                 order <= 2 ? 1e-5 : 1e-3));
    }
}

void table_suite(std::vector<VerifyCheck>& out) {
    const ModelSpec chi = ModelSpec::make(ModelId::ChiSquaredLog);
    std::vector<std::size_t> ns;
    for (const auto& row : kChiSquaredTable) ns.push_back(row.first);
    const auto rows = table_rows(chi, ns);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.push_back(make_check("table1", "chi2log N=" + std::to_string(rows[i].n), rows[i].ratio_3dp,
                                 kChiSquaredTable[i].second, 5e-10));
    }
}

void quadrature_suite(std::vector<VerifyCheck>& out, const QuadratureConfig& cfg) {
    const std::array<double, 1> right_end = {kPi / 2.0};
    const double i0 = integrate_with_log_singularity([](double s) { return std::log(std::cos(s)); },
                                                     {0.0, kPi / 2.0}, right_end, cfg)
                          .value;
    const double i2 = integrate_with_log_singularity(
                          [](double s) { return std::sin(s) * std::sin(s) * std::log(std::cos(s)); },
                          {0.0, kPi / 2.0}, right_end, cfg)
                          .value;
    const double cos2 = integrate([](double s) { return std::cos(s) * std::cos(s); }, {-kPi / 2.0, kPi / 2.0}, cfg)
                            .value;
    const double gamma2 =
        integrate([](double t) { return std::exp(2.0 * t - std::exp(t)); }, Interval::real_line(), cfg).value;
    out.push_back(make_check("quadrature", "int_0^{pi/2} ln cos", i0, -kPi / 2.0 * std::log(2.0), 1e-8));
    out.push_back(make_check("quadrature", "int_0^{pi/2} sin^2 ln cos", i2,
                             -kPi / 8.0 * (2.0 * std::log(2.0) + 1.0), 1e-8));
    out.push_back(make_check("quadrature", "I0 - 2 I2", i0 - 2.0 * i2, kPi / 4.0, 1e-8));
    out.push_back(make_check("quadrature", "trig normalizer 1/int cos^2", 1.0 / cos2, 2.0 / kPi, 1e-8));
    out.push_back(make_check("quadrature", "Gamma(2) = int exp(2t - e^t)", gamma2, 1.0, 1e-8));
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(const std::string& suite, double quad_tol) {
    const QuadratureConfig cfg = QuadratureConfig{}.with_tolerance(quad_tol);
    const bool all = suite == "all";
    if (!all && suite != "fisher" && suite != "h" && suite != "table1" && suite != "quadrature") {
        throw InputError("unknown verify suite '" + suite + "' (expected all, fisher, h, table1, quadrature)");
    }
    std::vector<VerifyCheck> out;
    if (all || suite == "quadrature") quadrature_suite(out, cfg);
    if (all || suite == "fisher") fisher_suite(out, cfg);
    if (all || suite == "h") h_suite(out, cfg);
    if (all || suite == "table1") table_suite(out);
    return out;
}

}  // namespace gaussn::cli
