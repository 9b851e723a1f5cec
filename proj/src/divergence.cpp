#include "gaussn/divergence.hpp"

#include "gaussn/errors.hpp"
#include "gaussn/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace gaussn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kScanPoints = 10000;
// Stencil values of H are differenced over steps down to 5e-3, so they need
// far more accuracy than the default tolerance.
constexpr double kDerivativeQuadTol = 1e-13;

double integrand_term(double p, double log_ratio) {
    return p > 0 ? p * log_ratio : 0.0;
}

HEvaluation integrate_h(const ModelSpec& model, double delta, const QuadratureConfig& cfg) {
    HEvaluation out{delta, 0.0, 0.0, HMethod::quadrature};
    if (delta == 0.0) return out;
    auto f = [&](double x) {
        const double lp = log_density_unchecked(model, x, 0.0);
        const double lq = log_density_unchecked(model, x + delta, 0.0);
        return integrand_term(std::exp(lp), lq - lp);
    };
    IntegrationResult r;
    if (model.is_line_model()) {
        r = integrate(f, model.x_domain, cfg);
    } else {
        // ln p(x + delta) diverges where cos(x + delta) = 0.
        r = integrate_with_log_singularity(f, model.x_domain, density_zeros_in_x(model, -delta), cfg);
    }
    out.value = std::min(r.value, 0.0);
    out.error_estimate = r.error_estimate + (r.value > 0 ? r.value : 0.0);
    return out;
}

void check_order(int order) {
    if (order < 1) throw InputError("derivative order must be at least 1");
}

}  // namespace

ModelSpec h_carrier(const ModelSpec& model) {
    if (model.id == ModelId::BinomialTrigIRF) return ModelSpec::make(ModelId::TrigTranslational);
    return model;
}

HEvaluation h_functional(const ModelSpec& model, double delta, const QuadratureConfig& cfg) {
    if (!std::isfinite(delta)) throw InputError("delta must be finite");
    const ModelSpec carrier = h_carrier(model);
    if (carrier.id == ModelId::TrigTranslational && std::abs(delta) > kPi) {
        throw InputError("trigonometric H needs |delta| <= pi");
    }
    return integrate_h(carrier, delta, cfg);
}

HEvaluation h_functional_pair(const ModelSpec& model, double xi_ml, double xi, const QuadratureConfig& cfg) {
    const ModelSpec carrier = h_carrier(model);
    check_parameter(carrier, xi_ml);
    check_parameter(carrier, xi);
    HEvaluation out{xi_ml - xi, 0.0, 0.0, HMethod::quadrature};
    auto f = [&](double x) {
        const double lp = log_density_unchecked(carrier, x, xi_ml);
        const double lq = log_density_unchecked(carrier, x, xi);
        return integrand_term(std::exp(lp), lq - lp);
    };
    IntegrationResult r;
    if (carrier.is_line_model()) {
        r = integrate(f, carrier.x_domain, cfg);
    } else {
        r = integrate_with_log_singularity(f, carrier.x_domain, density_zeros_in_x(carrier, xi), cfg);
    }
    out.value = r.value;
    out.error_estimate = r.error_estimate;
    return out;
}

double h_closed_form(const ModelSpec& model, double delta) {
    switch (model.id) {
        case ModelId::ChiSquaredLog:
            return delta + 1.0 - std::exp(delta);
        case ModelId::GaussianShift:
            return -delta * delta / (2.0 * model.sigma_param * model.sigma_param);
        case ModelId::TrigTranslational:
            return std::cos(2.0 * delta) - 1.0;
        case ModelId::BinomialTrigIRF:
            break;
    }
    throw UnsupportedError("no closed-form H for the binomial model; use its trigonometric extension");
}

double h_derivative_analytic(const ModelSpec& model, int order, double delta) {
    check_order(order);
    switch (model.id) {
        case ModelId::ChiSquaredLog:
            return order == 1 ? 1.0 - std::exp(delta) : -std::exp(delta);
        case ModelId::GaussianShift: {
            const double s2 = model.sigma_param * model.sigma_param;
            if (order == 1) return -delta / s2;
            if (order == 2) return -1.0 / s2;
            return 0.0;
        }
        case ModelId::TrigTranslational:
            // d^n/dd^n cos(2d) = 2^n cos(2d + n pi/2)
            return std::ldexp(std::cos(2.0 * delta + order * kPi / 2.0), order);
        case ModelId::BinomialTrigIRF:
            break;
    }
    throw UnsupportedError("analytic H derivatives are not defined for " + std::string(model_name(model.id)));
}

double h_derivative_numeric(const ModelSpec& model, int order, double delta, const QuadratureConfig& cfg) {
    check_order(order);
    if (order > 4) throw UnsupportedError("numeric H derivatives are limited to order 4");
    const ModelSpec carrier = h_carrier(model);
    const QuadratureConfig tight = cfg.with_tolerance(std::min(cfg.abs_tol, kDerivativeQuadTol));
    auto H = [&](double d) {
        // Stencils near |delta| = pi may leave one period; H is pi-periodic there.
        if (carrier.id == ModelId::TrigTranslational) d = std::remainder(d, kPi);
        return integrate_h(carrier, d, tight).value;
    };

    auto stencil = [&](double h) {
        switch (order) {
            case 1:
                return (H(delta + h) - H(delta - h)) / (2.0 * h);
            case 2:
                return (H(delta + h) - 2.0 * H(delta) + H(delta - h)) / (h * h);
            case 3:
                return (H(delta + 2 * h) - 2.0 * H(delta + h) + 2.0 * H(delta - h) - H(delta - 2 * h)) /
                       (2.0 * h * h * h);
            default:
                return (H(delta + 2 * h) - 4.0 * H(delta + h) + 6.0 * H(delta) - 4.0 * H(delta - h) +
                        H(delta - 2 * h)) /
                       (h * h * h * h);
        }
    };
    constexpr double h = 1e-2;
    return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

double max_abs_derivative(const ModelSpec& model, int order, double halfwidth) {
    check_order(order);
    if (!(halfwidth >= 0) || !std::isfinite(halfwidth)) throw InputError("halfwidth must be finite and nonnegative");
    const ModelSpec carrier = h_carrier(model);
    if (carrier.id == ModelId::ChiSquaredLog && order >= 2) return std::exp(halfwidth);
    if (carrier.id == ModelId::TrigTranslational && order % 2 == 0) return std::ldexp(1.0, order);
    if (carrier.id == ModelId::GaussianShift && order >= 3) return 0.0;
    if (halfwidth == 0.0) return std::abs(h_derivative_analytic(carrier, order, 0.0));
    auto f = [&](double d) { return h_derivative_analytic(carrier, order, d); };
    return kernels::max_abs_scan(f, -halfwidth, halfwidth, kScanPoints).value;
}

}  // namespace gaussn
