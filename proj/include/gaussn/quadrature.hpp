#pragma once

#include <functional>
#include <limits>
#include <span>

namespace gaussn {

using Integrand = std::function<double(double)>;

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    /// Unbounded ends are truncated at +-tail_cutoff.
    double tail_cutoff = 40.0;
    /// Half-width of the interval excised around each logarithmic singularity.
    double singularity_epsilon = 1e-8;

    /// Throws InputError unless every field is strictly positive and tail_cutoff >= 10.
    void validate() const;

    /// Same config with abs_tol and rel_tol replaced by tol.
    QuadratureConfig with_tolerance(double tol) const;
};

/// Reads GAUSSN_QUAD_TOL (if set and parseable) into abs_tol and rel_tol.
QuadratureConfig default_config_from_env();

struct Interval {
    double lo;
    double hi;

    static constexpr double inf = std::numeric_limits<double>::infinity();
    static Interval real_line() { return {-inf, inf}; }
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
    /// Magnitude of the contribution of all excised singular neighbourhoods.
    /// It is estimated and included in `value`; zero when nothing was excised.
    double excision_contribution = 0.0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration. Infinite ends are
/// truncated at +-cfg.tail_cutoff once |f| there is below abs_tol/100; the
/// cutoff is doubled (up to four times) if it is not.
///
/// Throws NumericalError carrying the best estimate when the tolerance is not
/// met within cfg.max_subdivisions panels.
IntegrationResult integrate(const Integrand& f, Interval interval, const QuadratureConfig& cfg = {});

/// Integrates f over [lo, hi] where f may diverge logarithmically at each of
/// `singular_points`. An interval of half-width cfg.singularity_epsilon is
/// excised around every point; the regular remainder is integrated
/// adaptively and each excised half-interval is integrated exactly under the
/// local model f(s0 +- u) = a + b ln u fitted at u = eps and eps/2. The
/// discrepancy against a second fit at eps/2 and eps/4 enters the error
/// estimate.
///
/// Points outside [lo, hi] are ignored; points closer than 4 eps to each
/// other raise InputError.
IntegrationResult integrate_with_log_singularity(const Integrand& f, Interval interval,
                                                 std::span<const double> singular_points,
                                                 const QuadratureConfig& cfg = {});

}  // namespace gaussn
