#include "gaussn/criterion.hpp"

#include "gaussn/divergence.hpp"
#include "gaussn/errors.hpp"
#include "gaussn/information.hpp"

#include <cmath>
#include <limits>

namespace gaussn {

namespace {

constexpr std::size_t kMaxScan = 100'000'000;

double ratio_for_order(const ModelSpec& model, std::size_t n, int order, double fisher) {
    const double nn = static_cast<double>(n);
    const double halfwidth = 3.0 / std::sqrt(nn * fisher);
    const double h_max = max_abs_derivative(model, order, halfwidth);
    if (order == 3) return h_max / (std::sqrt(nn) * std::pow(fisher, 1.5));
    return 3.0 * h_max / (4.0 * nn * fisher * fisher);
}

CriterionReport build_report(const ModelSpec& model, std::size_t n, int order, double threshold,
                             CriterionMode mode) {
    if (n == 0) throw InputError("N must be at least 1");
    CriterionReport r;
    r.model = model.id;
    r.n = n;
    r.fisher = fisher_information(model);
    r.sigma = 1.0 / std::sqrt(r.fisher);
    r.halfwidth = 3.0 * r.sigma / std::sqrt(static_cast<double>(n));
    r.remainder_order = order;
    r.h_max = max_abs_derivative(model, order, r.halfwidth);
    r.ratio_raw = ratio_for_order(model, n, order, r.fisher);
    r.ratio = mode == CriterionMode::paper_rounding ? round_3dp(r.ratio_raw) : r.ratio_raw;
    r.threshold = threshold;
    r.mode = mode;
    r.passes = r.ratio <= threshold;
    return r;
}

void check_threshold(double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw InputError("threshold must lie in (0, 1)");
}

}  // namespace

double round_3dp(double v) {
    return std::round(v * 1000.0) / 1000.0;
}

int detect_remainder_order(const ModelSpec& model, const QuadratureConfig& cfg) {
    const double fisher = fisher_information(model, cfg);
    const double third = h_derivative_numeric(model, 3, 0.0, cfg);
    if (std::abs(third) > 1e-4 * std::pow(fisher, 1.5)) return 3;
    const double scale = 1.0 / std::sqrt(fisher);
    for (int k = 1; k <= 5; ++k) {
        const double d = 0.1 * k * scale;
        const double plus = h_functional(model, d, cfg).value;
        const double minus = h_functional(model, -d, cfg).value;
        if (std::abs(plus - minus) > 1e-8) return 3;
    }
    return 4;
}

double remainder_ratio(const ModelSpec& model, std::size_t n) {
    if (n == 0) throw InputError("N must be at least 1");
    return ratio_for_order(model, n, detect_remainder_order(model), fisher_information(model));
}

CriterionReport criterion_report(const ModelSpec& model, std::size_t n, double threshold, CriterionMode mode) {
    check_threshold(threshold);
    return build_report(model, n, detect_remainder_order(model), threshold, mode);
}

std::size_t minimal_n(const ModelSpec& model, double threshold, CriterionMode mode) {
    check_threshold(threshold);
    const int order = detect_remainder_order(model);
    const double fisher = fisher_information(model);
    // The ratio depends on N through the halfwidth as well, so scan instead of inverting.
    for (std::size_t n = 1; n <= kMaxScan; ++n) {
        const double raw = ratio_for_order(model, n, order, fisher);
        const double compared = mode == CriterionMode::paper_rounding ? round_3dp(raw) : raw;
        if (compared <= threshold) return n;
    }
    throw NumericalError("criterion not satisfied within the scan limit", static_cast<double>(kMaxScan),
                         std::numeric_limits<double>::infinity());
}

std::vector<TableRow> table_rows(const ModelSpec& model, std::span<const std::size_t> n_values) {
    if (n_values.empty()) throw InputError("table needs at least one N");
    const int order = detect_remainder_order(model);
    const double fisher = fisher_information(model);
    std::vector<TableRow> rows;
    rows.reserve(n_values.size());
    for (std::size_t n : n_values) {
        if (n == 0) throw InputError("N must be at least 1");
        const double raw = ratio_for_order(model, n, order, fisher);
        rows.push_back({n, raw, round_3dp(raw)});
    }
    return rows;
}

}  // namespace gaussn
