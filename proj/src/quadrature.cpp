#include "gaussn/quadrature.hpp"

#include "gaussn/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <string>
#include <vector>

namespace gaussn {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

double eval_checked(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        throw NumericalError("integrand is not finite at x = " + std::to_string(x), 0.0,
                             std::numeric_limits<double>::infinity());
    }
    return y;
}

Panel gk15(const Integrand& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = eval_checked(f, center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = eval_checked(f, center - dx) + eval_checked(f, center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

double tolerance_for(const QuadratureConfig& cfg, double value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

IntegrationResult adapt_finite(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg) {
    if (lo == hi) return {};
    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    Panel first = gk15(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int panels = 1;

    while (total_err > tolerance_for(cfg, total)) {
        if (panels >= cfg.max_subdivisions) {
            throw NumericalError("quadrature tolerance not reached within " +
                                     std::to_string(cfg.max_subdivisions) + " subdivisions",
                                 total, total_err);
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw NumericalError("quadrature panel collapsed below machine resolution", total, total_err);
        }
        Panel left = gk15(f, worst.lo, mid);
        Panel right = gk15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    // Resum in left-to-right order so the result does not depend on heap history.
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    IntegrationResult out;
    for (const Panel& p : all) {
        out.value += p.value;
        out.error_estimate += p.error;
    }
    out.subdivisions_used = panels;
    return out;
}

double resolve_end(const Integrand& f, double end, const QuadratureConfig& cfg) {
    if (std::isfinite(end)) return end;
    const double sign = end > 0 ? 1.0 : -1.0;
    double cutoff = cfg.tail_cutoff;
    for (int attempt = 0; attempt < 5; ++attempt, cutoff *= 2.0) {
        const double y = f(sign * cutoff);
        if (std::isfinite(y) && std::abs(y) <= cfg.abs_tol / 100.0) return sign * cutoff;
    }
    throw NumericalError("integrand does not decay at the tail cutoff", 0.0,
                         std::numeric_limits<double>::infinity());
}

// Integral of a + b ln u over (0, len] with a, b fitted at u1 and u1/2.
double log_model_integral(const Integrand& f, double s0, double dir, double len, double u1) {
    const double u2 = 0.5 * u1;
    const double f1 = eval_checked(f, s0 + dir * u1);
    const double f2 = eval_checked(f, s0 + dir * u2);
    const double b = (f1 - f2) / std::log(u1 / u2);
    const double a = f1 - b * std::log(u1);
    return a * len + b * (len * std::log(len) - len);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0) || max_subdivisions <= 0 || !(tail_cutoff > 0) ||
        !(singularity_epsilon > 0)) {
        throw InputError("quadrature config fields must be strictly positive");
    }
    if (tail_cutoff < 10.0) throw InputError("tail_cutoff must be at least 10");
}

QuadratureConfig QuadratureConfig::with_tolerance(double tol) const {
    QuadratureConfig c = *this;
    c.abs_tol = tol;
    c.rel_tol = tol;
    return c;
}

QuadratureConfig default_config_from_env() {
    QuadratureConfig cfg;
    if (const char* env = std::getenv("GAUSSN_QUAD_TOL")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end != env && *end == '\0' && tol > 0 && std::isfinite(tol)) cfg = cfg.with_tolerance(tol);
    }
    return cfg;
}

IntegrationResult integrate(const Integrand& f, Interval interval, const QuadratureConfig& cfg) {
    cfg.validate();
    if (std::isnan(interval.lo) || std::isnan(interval.hi) || interval.lo > interval.hi) {
        throw InputError("integration interval must satisfy lo <= hi");
    }
    const double lo = resolve_end(f, interval.lo, cfg);
    const double hi = resolve_end(f, interval.hi, cfg);
    return adapt_finite(f, lo, hi, cfg);
}

IntegrationResult integrate_with_log_singularity(const Integrand& f, Interval interval,
                                                 std::span<const double> singular_points,
                                                 const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi) || interval.lo > interval.hi) {
        throw InputError("log-singular integration needs a finite interval with lo <= hi");
    }
    const double eps = cfg.singularity_epsilon;
    std::vector<double> points;
    for (double s : singular_points) {
        if (s >= interval.lo && s <= interval.hi) points.push_back(s);
    }
    std::sort(points.begin(), points.end());
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i] - points[i - 1] < 4.0 * eps) {
            throw InputError("singular points closer than 4*epsilon");
        }
    }

    IntegrationResult out;
    double cursor = interval.lo;
    auto integrate_piece = [&](double a, double b) {
        if (b <= a) return;
        IntegrationResult r = adapt_finite(f, a, b, cfg);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.subdivisions_used += r.subdivisions_used;
    };
    auto excise_side = [&](double s0, double dir, double len) {
        if (len <= 0) return;
        const double fine = log_model_integral(f, s0, dir, len, len);
        const double finer = log_model_integral(f, s0, dir, len, 0.5 * len);
        out.value += fine;
        out.excision_contribution += std::abs(fine);
        out.error_estimate += std::abs(fine - finer);
    };

    for (double s0 : points) {
        const double left_len = std::min(eps, s0 - interval.lo);
        const double right_len = std::min(eps, interval.hi - s0);
        integrate_piece(cursor, s0 - left_len);
        excise_side(s0, -1.0, left_len);
        excise_side(s0, +1.0, right_len);
        cursor = s0 + right_len;
    }
    integrate_piece(cursor, interval.hi);
    return out;
}

}  // namespace gaussn
