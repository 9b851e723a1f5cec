#include "gaussn/posterior.hpp"

#include "gaussn/divergence.hpp"
#include "gaussn/errors.hpp"
#include "gaussn/information.hpp"
#include "gaussn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gaussn {

namespace {

constexpr double kGridHalfwidthSigmas = 8.0;

void check_grid_size(std::size_t grid_size) {
    if (grid_size < kMinGridSize) throw InputError("posterior grids need at least 201 points");
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

PosteriorGrid from_log_density(std::vector<double> xi, const std::vector<double>& log_density) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : log_density) peak = std::max(peak, v);
    if (!std::isfinite(peak)) throw NumericalError("posterior vanishes on the whole grid", 0.0, 0.0);
    PosteriorGrid g;
    g.densities.resize(log_density.size());
    for (std::size_t i = 0; i < log_density.size(); ++i) g.densities[i] = std::exp(log_density[i] - peak);
    g.xi_values = std::move(xi);
    const double mass = trapezoid(g.xi_values, g.densities);
    for (double& d : g.densities) d /= mass;
    g.normalized = true;
    return g;
}

double normal_pdf(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

double grid_mass(const PosteriorGrid& grid) {
    return trapezoid(grid.xi_values, grid.densities);
}

PosteriorGrid posterior_from_observations(const ModelSpec& model, const Observations& obs, std::size_t grid_size) {
    check_grid_size(grid_size);
    check_observations(model, obs);
    const double xi_ml = ml_estimate(model, obs).value;
    const double n = static_cast<double>(obs.count());
    const double half = kGridHalfwidthSigmas / std::sqrt(n * fisher_information(model));
    const double lo = std::max(xi_ml - half, model.xi_domain.lo);
    const double hi = std::min(xi_ml + half, model.xi_domain.hi);
    std::vector<double> grid = kernels::linspace(lo, hi, grid_size);

    std::vector<double> ll;
    if (model.id == ModelId::BinomialTrigIRF) {
        double successes = 0.0;
        for (double x : obs.values) successes += x;
        const double failures = n - successes;
        ll = kernels::map_grid(
            [&](double xi) {
                const double c = std::cos(xi);
                const double s = std::sin(xi);
                const double a = successes > 0 ? successes * std::log(c * c) : 0.0;
                const double b = failures > 0 ? failures * std::log(s * s) : 0.0;
                return a + b;
            },
            grid);
    } else {
        ll = kernels::log_likelihood_grid(model, obs.values, grid);
    }
    return from_log_density(std::move(grid), ll);
}

PosteriorGrid posterior_asymptotic(const ModelSpec& model, double xi_ml, std::size_t n, std::size_t grid_size) {
    check_grid_size(grid_size);
    if (n == 0) throw InputError("N must be at least 1");
    const ModelSpec carrier = h_carrier(model);
    double half = kGridHalfwidthSigmas / std::sqrt(static_cast<double>(n) * fisher_information(model));
    double centre = xi_ml;
    if (carrier.id == ModelId::TrigTranslational) {
        centre = 0.0;
        half = std::min(half, std::numbers::pi / 2.0);
    } else {
        check_parameter(model, xi_ml);
    }
    std::vector<double> grid = kernels::linspace(centre - half, centre + half, grid_size);
    const double nn = static_cast<double>(n);
    const std::vector<double> ll =
        kernels::map_grid([&](double xi) { return nn * h_closed_form(carrier, centre - xi); }, grid);
    return from_log_density(std::move(grid), ll);
}

PosteriorGrid gaussian_reference(double xi_ml, double fisher, std::size_t n, std::size_t grid_size) {
    check_grid_size(grid_size);
    if (!(fisher > 0) || n == 0) throw InputError("reference needs fisher > 0 and N >= 1");
    const double half = kGridHalfwidthSigmas / std::sqrt(static_cast<double>(n) * fisher);
    const std::vector<double> grid = kernels::linspace(xi_ml - half, xi_ml + half, grid_size);
    return gaussian_reference_on(grid, xi_ml, fisher, n);
}

PosteriorGrid gaussian_reference_on(std::span<const double> xi_values, double xi_ml, double fisher, std::size_t n) {
    if (!(fisher > 0) || n == 0) throw InputError("reference needs fisher > 0 and N >= 1");
    const double sd = 1.0 / std::sqrt(static_cast<double>(n) * fisher);
    PosteriorGrid g;
    g.xi_values.assign(xi_values.begin(), xi_values.end());
    g.densities.reserve(xi_values.size());
    for (double xi : xi_values) g.densities.push_back(normal_pdf(xi, xi_ml, sd));
    g.normalized = true;
    return g;
}

ComparisonReport compare_to_gaussian(const PosteriorGrid& post, const PosteriorGrid& ref) {
    const std::size_t m = post.xi_values.size();
    if (m < 2 || ref.xi_values.size() != m || post.densities.size() != m || ref.densities.size() != m) {
        throw InputError("posterior and reference grids differ in size");
    }
    const double span = post.xi_values.back() - post.xi_values.front();
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(post.xi_values[i] - ref.xi_values[i]) > 1e-12 * std::max(1.0, span)) {
            throw InputError("posterior and reference grids differ");
        }
    }

    // Window from the reference's own moments: mean +- 3 sd.
    const auto& x = ref.xi_values;
    std::vector<double> moment(m);
    const double mass = trapezoid(x, ref.densities);
    for (std::size_t i = 0; i < m; ++i) moment[i] = x[i] * ref.densities[i];
    const double mean = trapezoid(x, moment) / mass;
    for (std::size_t i = 0; i < m; ++i) moment[i] = (x[i] - mean) * (x[i] - mean) * ref.densities[i];
    const double sd = std::sqrt(trapezoid(x, moment) / mass);

    ComparisonReport out;
    out.interval = {mean - 3.0 * sd, mean + 3.0 * sd};

    const auto mode_it = std::max_element(post.densities.begin(), post.densities.end());
    const std::size_t mode = static_cast<std::size_t>(mode_it - post.densities.begin());
    const double offset = std::log(post.densities[mode]) - std::log(ref.densities[mode]);
    // Closed window; the slack keeps grid points sitting on +-3 sd inside.
    const double slack = 1e-9 * sd;
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] < out.interval.first - slack || x[i] > out.interval.second + slack) continue;
        const double d = std::log(post.densities[i]) - std::log(ref.densities[i]) - offset;
        out.sup_log_deviation = std::max(out.sup_log_deviation, std::abs(d));
    }

    std::vector<double> kl(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double p = post.densities[i];
        if (p > 0) kl[i] = p * (std::log(p) - std::log(ref.densities[i]));
    }
    out.kl_to_gaussian = std::max(0.0, trapezoid(x, kl));
    return out;
}

std::pair<double, double> central_interval(const PosteriorGrid& grid, double mass) {
    if (!(mass > 0 && mass < 1)) throw InputError("mass must lie in (0, 1)");
    const auto& x = grid.xi_values;
    const auto& y = grid.densities;
    std::vector<double> cdf(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) cdf[i] = cdf[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    const double total = cdf.back();
    auto quantile = [&](double q) {
        const double target = q * total;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
        if (it == cdf.begin()) return x.front();
        if (it == cdf.end()) return x.back();
        const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
        const double t = (target - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
        return x[i - 1] + t * (x[i] - x[i - 1]);
    };
    const double tail = 0.5 * (1.0 - mass);
    return {quantile(tail), quantile(1.0 - tail)};
}

}  // namespace gaussn
