#pragma once

#include "gaussn/models.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gaussn {

inline constexpr std::size_t kDefaultGridSize = 2001;
inline constexpr std::size_t kMinGridSize = 201;

struct PosteriorGrid {
    std::vector<double> xi_values;
    std::vector<double> densities;
    bool normalized = false;
};

struct ComparisonReport {
    /// max over the 3 sigma window of |ln post - ln ref|, after subtracting the
    /// difference at the posterior's mode.
    double sup_log_deviation = 0.0;
    /// KL(post || ref), trapezoid rule over the whole grid.
    double kl_to_gaussian = 0.0;
    std::pair<double, double> interval{0.0, 0.0};
};

/// Posterior under the constant prior, from the product of densities
/// (binomial: the score form cos^(2 s) xi sin^(2(N - s)) xi). The grid spans
/// xi_ML +- 8 sigma / sqrt(N), clipped to the parameter domain. Computed in
/// log space with the maximum subtracted.
PosteriorGrid posterior_from_observations(const ModelSpec& model, const Observations& obs,
                                          std::size_t grid_size = kDefaultGridSize);

/// exp(N H(xi_ml - xi)), normalized, on xi_ml +- 8 sigma / sqrt(N). For the
/// trigonometric and binomial models the estimator is shifted to 0 first, so
/// the grid is in the coordinate xi - xi_ml, and it is cut at |delta| <= pi/2.
PosteriorGrid posterior_asymptotic(const ModelSpec& model, double xi_ml, std::size_t n,
                                   std::size_t grid_size = kDefaultGridSize);

/// Normal density with mean xi_ml and variance 1 / (n fisher) on
/// xi_ml +- 8 sigma / sqrt(n).
PosteriorGrid gaussian_reference(double xi_ml, double fisher, std::size_t n,
                                 std::size_t grid_size = kDefaultGridSize);

/// Same density evaluated on a caller-supplied grid.
PosteriorGrid gaussian_reference_on(std::span<const double> xi_values, double xi_ml, double fisher, std::size_t n);

/// Throws InputError unless both grids carry the same abscissae.
ComparisonReport compare_to_gaussian(const PosteriorGrid& post, const PosteriorGrid& ref);

/// Trapezoid integral of the densities.
double grid_mass(const PosteriorGrid& grid);

/// Central interval holding `mass` of the grid density (linear interpolation
/// of the cumulative trapezoid sum).
std::pair<double, double> central_interval(const PosteriorGrid& grid, double mass = 0.9973);

}  // namespace gaussn
