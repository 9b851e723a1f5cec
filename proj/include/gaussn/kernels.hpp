#pragma once

// Data-parallel inner loops. Each kernel has a serial reference (kept for
// testing and benchmarking) and an OpenMP version; the unsuffixed name
// dispatches to the OpenMP version when the library is built with OpenMP.
// All variants produce bit-identical results: every output element is
// computed by one thread in a fixed order.

#include "gaussn/models.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gaussn::kernels {

/// out[j] = sum_k ln p(obs[k] | grid[j]), summed in observation order.
std::vector<double> log_likelihood_grid_serial(const ModelSpec& model, std::span<const double> obs,
                                               std::span<const double> grid);
std::vector<double> log_likelihood_grid_omp(const ModelSpec& model, std::span<const double> obs,
                                            std::span<const double> grid);
std::vector<double> log_likelihood_grid(const ModelSpec& model, std::span<const double> obs,
                                        std::span<const double> grid);

struct ScanMax {
    double value = 0.0;  ///< max |f| over the scanned points
    double at = 0.0;     ///< first point attaining it
};

/// Evaluates |f| at `points` equally spaced points on [lo, hi] (both ends
/// included). f must be safe to call concurrently.
ScanMax max_abs_scan_serial(const std::function<double(double)>& f, double lo, double hi, std::size_t points);
ScanMax max_abs_scan_omp(const std::function<double(double)>& f, double lo, double hi, std::size_t points);
ScanMax max_abs_scan(const std::function<double(double)>& f, double lo, double hi, std::size_t points);

/// Evaluates f at every grid point.
std::vector<double> map_grid_serial(const std::function<double(double)>& f, std::span<const double> grid);
std::vector<double> map_grid_omp(const std::function<double(double)>& f, std::span<const double> grid);
std::vector<double> map_grid(const std::function<double(double)>& f, std::span<const double> grid);

/// Equally spaced points on [lo, hi], both ends included; points >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t points);

bool built_with_openmp();

}  // namespace gaussn::kernels
