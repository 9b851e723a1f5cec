#include "gaussn/kernels.hpp"

#include "gaussn/errors.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gaussn::kernels {

namespace {

double row_sum(const ModelSpec& model, std::span<const double> obs, double xi) {
    double acc = 0.0;
    for (double x : obs) acc += log_density_unchecked(model, x, xi);
    return acc;
}

double point_at(double lo, double hi, std::size_t i, std::size_t points) {
    if (i + 1 == points) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

void check_points(std::size_t points) {
    if (points < 2) throw InputError("a scan needs at least two points");
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t points) {
    check_points(points);
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) out[i] = point_at(lo, hi, i, points);
    return out;
}

std::vector<double> log_likelihood_grid_serial(const ModelSpec& model, std::span<const double> obs,
                                               std::span<const double> grid) {
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] = row_sum(model, obs, grid[j]);
    return out;
}

std::vector<double> log_likelihood_grid_omp(const ModelSpec& model, std::span<const double> obs,
                                            std::span<const double> grid) {
    std::vector<double> out(grid.size());
    const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) out[j] = row_sum(model, obs, grid[j]);
    return out;
}

std::vector<double> log_likelihood_grid(const ModelSpec& model, std::span<const double> obs,
                                        std::span<const double> grid) {
#ifdef _OPENMP
    return log_likelihood_grid_omp(model, obs, grid);
#else
    return log_likelihood_grid_serial(model, obs, grid);
#endif
}

ScanMax max_abs_scan_serial(const std::function<double(double)>& f, double lo, double hi, std::size_t points) {
    check_points(points);
    ScanMax best{-1.0, lo};
    for (std::size_t i = 0; i < points; ++i) {
        const double x = point_at(lo, hi, i, points);
        const double v = std::abs(f(x));
        if (v > best.value) best = {v, x};
    }
    return best;
}

ScanMax max_abs_scan_omp(const std::function<double(double)>& f, double lo, double hi, std::size_t points) {
    check_points(points);
    std::vector<double> values(points);
    const auto n = static_cast<std::int64_t>(points);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) values[i] = std::abs(f(point_at(lo, hi, i, points)));
    // Serial reduction keeps the first-index tie rule of the reference.
    ScanMax best{-1.0, lo};
    for (std::size_t i = 0; i < points; ++i) {
        if (values[i] > best.value) best = {values[i], point_at(lo, hi, i, points)};
    }
    return best;
}

ScanMax max_abs_scan(const std::function<double(double)>& f, double lo, double hi, std::size_t points) {
#ifdef _OPENMP
    return max_abs_scan_omp(f, lo, hi, points);
#else
    return max_abs_scan_serial(f, lo, hi, points);
#endif
}

std::vector<double> map_grid_serial(const std::function<double(double)>& f, std::span<const double> grid) {
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] = f(grid[j]);
    return out;
}

std::vector<double> map_grid_omp(const std::function<double(double)>& f, std::span<const double> grid) {
    std::vector<double> out(grid.size());
    const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) out[j] = f(grid[j]);
    return out;
}

std::vector<double> map_grid(const std::function<double(double)>& f, std::span<const double> grid) {
#ifdef _OPENMP
    return map_grid_omp(f, grid);
#else
    return map_grid_serial(f, grid);
#endif
}

bool built_with_openmp() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace gaussn::kernels
