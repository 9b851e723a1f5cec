#pragma once

#include "gaussn/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace gaussn {

enum class ModelId {
    /// p(x|xi) = exp(x - xi - e^(x - xi)), x, xi real.
    ChiSquaredLog,
    /// Normal with mean xi and fixed sigma.
    GaussianShift,
    /// p(x|xi) = (2/pi) cos^2(x - xi), x, xi in [-pi/2, pi/2].
    TrigTranslational,
    /// x in {0, 1}, P(x = 1|xi) = cos^2 xi.
    BinomialTrigIRF,
};

/// CLI short name: chi2log, gauss, trig, binom.
std::string_view model_name(ModelId id);
/// Inverse of model_name; throws InputError on an unknown name.
ModelId parse_model_name(std::string_view name);

struct ModelSpec {
    ModelId id = ModelId::ChiSquaredLog;
    Interval x_domain = Interval::real_line();
    Interval xi_domain = Interval::real_line();
    double sigma_param = 1.0;
    std::optional<double> analytic_fisher;

    static ModelSpec make(ModelId id, double sigma = 1.0);

    bool is_line_model() const { return id == ModelId::ChiSquaredLog || id == ModelId::GaussianShift; }
    bool is_discrete() const { return id == ModelId::BinomialTrigIRF; }
};

struct Observations {
    std::vector<double> values;

    std::size_t count() const { return values.size(); }
};

/// Throws InputError unless x lies in the observable domain of the model.
void check_observation(const ModelSpec& model, double x);
/// Throws InputError unless xi lies in the parameter domain.
void check_parameter(const ModelSpec& model, double xi);
/// Non-empty and every value in the observable domain.
void check_observations(const ModelSpec& model, const Observations& obs);

/// ln p(x|xi) without domain checks; -inf where the density vanishes. Trig
/// densities are treated as pi-periodic in x - xi so that finite-difference
/// stencils may step slightly outside the parameter domain.
double log_density_unchecked(const ModelSpec& model, double x, double xi);

double log_density(const ModelSpec& model, double x, double xi);
double density(const ModelSpec& model, double x, double xi);

/// Points of the observable domain where p(x|xi) = 0 (log singularities of
/// ln p). Empty for the line models.
std::vector<double> density_zeros_in_x(const ModelSpec& model, double xi);

/// Distance from xi to the nearest parameter value at which p(x|.) vanishes;
/// +inf when it never does.
double distance_to_parameter_zero(const ModelSpec& model, double x, double xi);

/// Integral (or sum for the binomial model) of p(x|xi) over the observable domain.
double normalization_check(const ModelSpec& model, double xi, const QuadratureConfig& cfg = {});

struct MlEstimate {
    double value = 0.0;
    /// Set when the likelihood has several global maxima; value is the smallest.
    bool ambiguous = false;
    /// Other global maximizers, ascending. For BinomialTrigIRF this holds the
    /// mirror root -value when value > 0.
    std::vector<double> twins;
};

MlEstimate ml_estimate(const ModelSpec& model, const Observations& obs);

/// Deterministic given seed.
Observations sample(const ModelSpec& model, double xi_true, std::size_t n, std::uint64_t seed);

}  // namespace gaussn
