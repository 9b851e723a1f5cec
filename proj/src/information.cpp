#include "gaussn/information.hpp"

#include "gaussn/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gaussn {

namespace {

constexpr double kScoreStep = 1e-5;
constexpr double kCurvatureStep = 1e-4;

double local_step(const ModelSpec& model, double x, double xi, double nominal, double fraction) {
    return std::min(nominal, fraction * distance_to_parameter_zero(model, x, xi));
}

double score(const ModelSpec& model, double x, double xi) {
    const double h = local_step(model, x, xi, kScoreStep, 0.1);
    auto central = [&](double step) {
        return (log_density_unchecked(model, x, xi + step) - log_density_unchecked(model, x, xi - step)) /
               (2.0 * step);
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

double curvature(const ModelSpec& model, double x, double xi) {
    // Without extrapolation the relative bias near a zero at distance u is
    // (h/u)^2 / 2, hence the smaller fraction.
    const double h = local_step(model, x, xi, kCurvatureStep, 1e-3);
    auto second = [&](double step) {
        return (log_density_unchecked(model, x, xi + step) - 2.0 * log_density_unchecked(model, x, xi) +
                log_density_unchecked(model, x, xi - step)) /
               (step * step);
    };
    // Discrete expectations carry no quadrature noise for the extrapolation
    // to amplify.
    if (model.is_discrete()) return (4.0 * second(0.5 * h) - second(h)) / 3.0;
    return second(h);
}

// Expectation of g(x, xi) under p(x|xi), skipping points where p vanishes.
template <class G>
double expectation(const ModelSpec& model, double xi, const QuadratureConfig& cfg, G g) {
    check_parameter(model, xi);
    if (model.is_discrete()) {
        double acc = 0.0;
        for (double x : {0.0, 1.0}) {
            const double p = std::exp(log_density_unchecked(model, x, xi));
            if (p > 0) {
                acc += p * g(x, xi);
                continue;
            }
            // p * g has a removable singularity where an outcome becomes
            // impossible: take the limit from symmetric neighbours, once
            // Richardson-extrapolated.
            auto term = [&](double at) { return std::exp(log_density_unchecked(model, x, at)) * g(x, at); };
            auto average = [&](double eta) { return 0.5 * (term(xi - eta) + term(xi + eta)); };
            constexpr double eta = 2e-3;
            acc += (4.0 * average(0.5 * eta) - average(eta)) / 3.0;
        }
        return acc;
    }
    const QuadratureConfig loose = cfg.with_tolerance(std::max(cfg.abs_tol, kFiniteDifferenceQuadTol));
    auto integrand = [&](double x) {
        const double p = std::exp(log_density_unchecked(model, x, xi));
        return p > 0 ? p * g(x, xi) : 0.0;
    };
    if (model.is_line_model()) return integrate(integrand, model.x_domain, loose).value;
    const std::vector<double> zeros = density_zeros_in_x(model, xi);
    return integrate_with_log_singularity(integrand, model.x_domain, zeros, loose).value;
}

}  // namespace

double fisher_gradient_form(const ModelSpec& model, double xi, const QuadratureConfig& cfg) {
    return expectation(model, xi, cfg, [&](double x, double at) {
        const double s = score(model, x, at);
        return s * s;
    });
}

double fisher_curvature_form(const ModelSpec& model, double xi, const QuadratureConfig& cfg) {
    return -expectation(model, xi, cfg, [&](double x, double at) { return curvature(model, x, at); });
}

double prior_measure(const ModelSpec& model) {
    if (!model.analytic_fisher) throw UnsupportedError("prior measure needs a xi-independent Fisher information");
    return std::sqrt(*model.analytic_fisher);
}

FisherReport fisher_report(const ModelSpec& model, std::span<const double> xi_probes, const QuadratureConfig& cfg) {
    if (xi_probes.empty()) throw InputError("fisher_report needs at least one probe");
    FisherReport report;
    report.xi_probe_values.assign(xi_probes.begin(), xi_probes.end());
    for (std::size_t i = 0; i < xi_probes.size(); ++i) {
        const double g = fisher_gradient_form(model, xi_probes[i], cfg);
        const double c = fisher_curvature_form(model, xi_probes[i], cfg);
        if (i == 0) {
            report.gradient_form = g;
            report.curvature_form = c;
        }
        report.max_xi_variation = std::max({report.max_xi_variation, std::abs(g - report.gradient_form),
                                            std::abs(c - report.curvature_form)});
        report.max_form_discrepancy = std::max(report.max_form_discrepancy, std::abs(g - c));
    }
    return report;
}

double fisher_information(const ModelSpec& model, const QuadratureConfig& cfg) {
    if (model.analytic_fisher) return *model.analytic_fisher;
    const double centre = 0.5 * (model.xi_domain.lo + model.xi_domain.hi);
    return fisher_gradient_form(model, std::isfinite(centre) ? centre : 0.0, cfg);
}

}  // namespace gaussn
