#pragma once

#include "gaussn/models.hpp"
#include "gaussn/quadrature.hpp"

#include <span>
#include <vector>

namespace gaussn {

/// Integrands built from finite differences carry roundoff noise of roughly
/// this size; the quadrature tolerance is never tightened below it.
inline constexpr double kFiniteDifferenceQuadTol = 1e-8;

/// E[(d/dxi ln p)^2]. The score is a central difference with step 1e-5 and
/// one Richardson extrapolation; the step shrinks to a tenth of the distance
/// to a zero of p(x|.) when one is closer.
double fisher_gradient_form(const ModelSpec& model, double xi, const QuadratureConfig& cfg = {});

/// -E[d^2/dxi^2 ln p] with a central second difference of step 1e-4; near a
/// zero of p(x|.) the step shrinks to a thousandth of the distance to it.
double fisher_curvature_form(const ModelSpec& model, double xi, const QuadratureConfig& cfg = {});

/// sqrt(F), the constant translation-invariant prior density. Its value
/// cancels in every posterior.
double prior_measure(const ModelSpec& model);

struct FisherReport {
    double gradient_form = 0.0;
    double curvature_form = 0.0;
    std::vector<double> xi_probe_values;
    /// Largest |F(xi) - F(xi_0)| over the probes, both forms considered.
    double max_xi_variation = 0.0;
    /// Largest |gradient - curvature| over the probes.
    double max_form_discrepancy = 0.0;
};

/// Evaluates both forms at every probe; gradient_form and curvature_form are
/// the values at the first probe.
FisherReport fisher_report(const ModelSpec& model, std::span<const double> xi_probes,
                           const QuadratureConfig& cfg = {});

/// The model's closed-form Fisher information when known, otherwise the
/// gradient form at the centre of the parameter domain.
double fisher_information(const ModelSpec& model, const QuadratureConfig& cfg = {});

}  // namespace gaussn
