#pragma once

// The functional H(xi_ML | xi) = int p(x|xi_ML) ln[p(x|xi) / p(x|xi_ML)] dx,
// i.e. minus the Kullback-Leibler divergence of p(.|xi) from p(.|xi_ML).
//
// Orientation: every single-argument routine takes delta = xi_ML - xi. For
// the translation models H depends on delta only and
//     H(delta) = int p(x) ln[p(x + delta) / p(x)] dx.
// Derivatives are taken with respect to delta; a derivative with respect to
// xi picks up a factor (-1)^order.
//
// The binomial model has no H of its own here: it is represented by its
// translational extension, the trigonometric model.

#include "gaussn/models.hpp"
#include "gaussn/quadrature.hpp"

namespace gaussn {

enum class HMethod { quadrature, closed_form };

struct HEvaluation {
    double delta = 0.0;
    double value = 0.0;
    double error_estimate = 0.0;
    HMethod method = HMethod::quadrature;
};

/// The model whose H represents `model`: itself, or the trigonometric
/// extension for BinomialTrigIRF.
ModelSpec h_carrier(const ModelSpec& model);

/// H(delta) by quadrature. Trigonometric deltas must satisfy |delta| <= pi.
HEvaluation h_functional(const ModelSpec& model, double delta, const QuadratureConfig& cfg = {});

/// Two-argument form H(xi_ml | xi), integrated in the original variable.
HEvaluation h_functional_pair(const ModelSpec& model, double xi_ml, double xi, const QuadratureConfig& cfg = {});

/// chi2log: delta + 1 - e^delta; gauss: -delta^2 / (2 sigma^2); trig: cos(2 delta) - 1.
/// Throws UnsupportedError for the binomial model.
double h_closed_form(const ModelSpec& model, double delta);

/// d^order H / d delta^order from the closed forms. order >= 1.
double h_derivative_analytic(const ModelSpec& model, int order, double delta);

/// Central finite differences of h_functional (step 1e-2) with one Richardson
/// extrapolation.
double h_derivative_numeric(const ModelSpec& model, int order, double delta, const QuadratureConfig& cfg = {});

/// max |H^(order)(delta)| over |delta| <= halfwidth.
double max_abs_derivative(const ModelSpec& model, int order, double halfwidth);

}  // namespace gaussn
