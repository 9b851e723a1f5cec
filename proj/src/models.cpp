#include "gaussn/models.hpp"

#include "gaussn/errors.hpp"
#include "gaussn/kernels.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace gaussn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kDomainSlack = 1e-12;
constexpr std::size_t kTrigScanCells = 4096;

bool in_interval(const Interval& iv, double v) {
    return !std::isnan(v) && v >= iv.lo - kDomainSlack && v <= iv.hi + kDomainSlack;
}

double wrap_half_period(double x) {
    return x - kPi * std::floor((x + kHalfPi) / kPi);
}

double log_sum_exp_mean(const std::vector<double>& xs) {
    const double m = *std::max_element(xs.begin(), xs.end());
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc / static_cast<double>(xs.size()));
}

// d/dxi of sum_k ln cos^2(x_k - xi).
double trig_score(const std::vector<double>& xs, double xi) {
    double acc = 0.0;
    for (double x : xs) acc += 2.0 * std::tan(x - xi);
    return acc;
}

double trig_loglik(const std::vector<double>& xs, double xi) {
    double acc = 0.0;
    for (double x : xs) {
        const double c = std::cos(x - xi);
        acc += std::log(c * c);
    }
    return acc;
}

double refine_trig_max(const std::vector<double>& xs, double lo, double hi) {
    const double d_lo = trig_score(xs, lo);
    const double d_hi = trig_score(xs, hi);
    if (std::isfinite(d_lo) && std::isfinite(d_hi) && d_lo > 0 && d_hi < 0) {
        std::uintmax_t iters = 200;
        auto bracket = boost::math::tools::toms748_solve(
            [&](double xi) { return trig_score(xs, xi); }, lo, hi, d_lo, d_hi,
            boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2), iters);
        return 0.5 * (bracket.first + bracket.second);
    }
    auto found = boost::math::tools::brent_find_minima(
        [&](double xi) { return -trig_loglik(xs, xi); }, lo, hi, std::numeric_limits<double>::digits / 2);
    return found.first;
}

MlEstimate trig_ml(const std::vector<double>& xs) {
    const std::size_t cells = kTrigScanCells;
    const double step = kPi / static_cast<double>(cells);
    std::vector<double> grid(cells);
    for (std::size_t i = 0; i < cells; ++i) grid[i] = -kHalfPi + step * static_cast<double>(i);
    const ModelSpec trig = ModelSpec::make(ModelId::TrigTranslational);
    const std::vector<double> ll = kernels::log_likelihood_grid(trig, xs, grid);

    struct Candidate {
        double xi;
        double loglik;
    };
    std::vector<Candidate> maxima;
    for (std::size_t i = 0; i < cells; ++i) {
        const double prev = ll[(i + cells - 1) % cells];
        const double next = ll[(i + 1) % cells];
        if (!std::isfinite(ll[i]) || ll[i] < prev || ll[i] <= next) continue;
        const double xi = wrap_half_period(refine_trig_max(xs, grid[i] - step, grid[i] + step));
        maxima.push_back({xi, trig_loglik(xs, xi)});
    }
    if (maxima.empty()) {
        // Flat likelihood cannot occur for nonempty data; fall back to the best grid point.
        const auto it = std::max_element(ll.begin(), ll.end());
        const double xi = grid[static_cast<std::size_t>(it - ll.begin())];
        return {xi, false, {}};
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : maxima) best = std::max(best, c.loglik);
    const double tie_tol = 1e-9 * std::max(1.0, std::abs(best));
    std::vector<double> winners;
    for (const auto& c : maxima) {
        if (c.loglik < best - tie_tol) continue;
        const bool duplicate = std::any_of(winners.begin(), winners.end(), [&](double w) {
            const double d = std::abs(wrap_half_period(w - c.xi));
            return d < 1e-7;
        });
        if (!duplicate) winners.push_back(c.xi);
    }
    std::sort(winners.begin(), winners.end());
    MlEstimate out;
    out.value = winners.front();
    out.ambiguous = winners.size() > 1;
    out.twins.assign(winners.begin() + 1, winners.end());
    return out;
}

double trig_cdf(double u) {
    return 0.5 + (u + 0.5 * std::sin(2.0 * u)) / kPi;
}

double trig_inverse_cdf(double p) {
    std::uintmax_t iters = 200;
    auto bracket = boost::math::tools::toms748_solve(
        [p](double u) { return trig_cdf(u) - p; }, -kHalfPi, kHalfPi,
        boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2), iters);
    return 0.5 * (bracket.first + bracket.second);
}

}  // namespace

std::string_view model_name(ModelId id) {
    switch (id) {
        case ModelId::ChiSquaredLog: return "chi2log";
        case ModelId::GaussianShift: return "gauss";
        case ModelId::TrigTranslational: return "trig";
        case ModelId::BinomialTrigIRF: return "binom";
    }
    return "unknown";
}

ModelId parse_model_name(std::string_view name) {
    for (ModelId id : {ModelId::ChiSquaredLog, ModelId::GaussianShift, ModelId::TrigTranslational,
                       ModelId::BinomialTrigIRF}) {
        if (model_name(id) == name) return id;
    }
    throw InputError("unknown model '" + std::string(name) + "' (expected chi2log, gauss, trig or binom)");
}

ModelSpec ModelSpec::make(ModelId id, double sigma) {
    if (!(sigma > 0) || !std::isfinite(sigma)) throw InputError("sigma must be positive and finite");
    ModelSpec m;
    m.id = id;
    m.sigma_param = sigma;
    switch (id) {
        case ModelId::ChiSquaredLog:
            m.analytic_fisher = 1.0;
            break;
        case ModelId::GaussianShift:
            m.analytic_fisher = 1.0 / (sigma * sigma);
            break;
        case ModelId::TrigTranslational:
            m.x_domain = {-kHalfPi, kHalfPi};
            m.xi_domain = {-kHalfPi, kHalfPi};
            m.analytic_fisher = 4.0;
            break;
        case ModelId::BinomialTrigIRF:
            m.x_domain = {0.0, 1.0};
            m.xi_domain = {-kHalfPi, kHalfPi};
            m.analytic_fisher = 4.0;
            break;
    }
    return m;
}

void check_observation(const ModelSpec& model, double x) {
    if (model.is_discrete()) {
        if (x != 0.0 && x != 1.0) throw InputError("binomial observations must be 0 or 1");
        return;
    }
    if (!std::isfinite(x) || !in_interval(model.x_domain, x)) {
        throw InputError("observation " + std::to_string(x) + " outside the domain of " +
                         std::string(model_name(model.id)));
    }
}

void check_parameter(const ModelSpec& model, double xi) {
    if (!std::isfinite(xi) || !in_interval(model.xi_domain, xi)) {
        throw InputError("parameter " + std::to_string(xi) + " outside the domain of " +
                         std::string(model_name(model.id)));
    }
}

void check_observations(const ModelSpec& model, const Observations& obs) {
    if (obs.values.empty()) throw InputError("observations must be nonempty");
    for (double x : obs.values) check_observation(model, x);
}

double log_density_unchecked(const ModelSpec& model, double x, double xi) {
    switch (model.id) {
        case ModelId::ChiSquaredLog: {
            const double t = x - xi;
            return t - std::exp(t);
        }
        case ModelId::GaussianShift: {
            const double s2 = model.sigma_param * model.sigma_param;
            const double d = x - xi;
            return -0.5 * std::log(2.0 * kPi * s2) - d * d / (2.0 * s2);
        }
        case ModelId::TrigTranslational: {
            const double c = std::cos(x - xi);
            return std::log(2.0 / kPi) + std::log(c * c);
        }
        case ModelId::BinomialTrigIRF: {
            const double r = x == 1.0 ? std::cos(xi) : std::sin(xi);
            return std::log(r * r);
        }
    }
    return -std::numeric_limits<double>::infinity();
}

double log_density(const ModelSpec& model, double x, double xi) {
    check_observation(model, x);
    check_parameter(model, xi);
    return log_density_unchecked(model, x, xi);
}

double density(const ModelSpec& model, double x, double xi) {
    return std::exp(log_density(model, x, xi));
}

std::vector<double> density_zeros_in_x(const ModelSpec& model, double xi) {
    std::vector<double> out;
    if (model.id != ModelId::TrigTranslational) return out;
    // cos(x - xi) vanishes at x = xi + pi/2 + k pi.
    for (int k = -3; k <= 2; ++k) {
        const double z = xi + kHalfPi + k * kPi;
        if (in_interval(model.x_domain, z)) out.push_back(std::clamp(z, -kHalfPi, kHalfPi));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double distance_to_parameter_zero(const ModelSpec& model, double x, double xi) {
    switch (model.id) {
        case ModelId::TrigTranslational:
            return std::abs(std::remainder(xi - x - kHalfPi, kPi));
        case ModelId::BinomialTrigIRF:
            return x == 1.0 ? std::abs(std::remainder(xi - kHalfPi, kPi)) : std::abs(std::remainder(xi, kPi));
        default:
            return std::numeric_limits<double>::infinity();
    }
}

double normalization_check(const ModelSpec& model, double xi, const QuadratureConfig& cfg) {
    check_parameter(model, xi);
    if (model.is_discrete()) return density(model, 0.0, xi) + density(model, 1.0, xi);
    auto f = [&](double x) { return std::exp(log_density_unchecked(model, x, xi)); };
    return integrate(f, model.x_domain, cfg).value;
}

MlEstimate ml_estimate(const ModelSpec& model, const Observations& obs) {
    check_observations(model, obs);
    const auto& xs = obs.values;
    const double n = static_cast<double>(xs.size());
    switch (model.id) {
        case ModelId::ChiSquaredLog:
            return {log_sum_exp_mean(xs), false, {}};
        case ModelId::GaussianShift: {
            double acc = 0.0;
            for (double x : xs) acc += x;
            return {acc / n, false, {}};
        }
        case ModelId::TrigTranslational:
            return trig_ml(xs);
        case ModelId::BinomialTrigIRF: {
            double successes = 0.0;
            for (double x : xs) successes += x;
            const double root = std::acos(std::sqrt(successes / n));
            MlEstimate out{root, false, {}};
            if (root > 0) out.twins.push_back(-root);
            return out;
        }
    }
    return {};
}

Observations sample(const ModelSpec& model, double xi_true, std::size_t n, std::uint64_t seed) {
    check_parameter(model, xi_true);
    if (n == 0) throw InputError("sample size must be at least 1");
    std::mt19937_64 engine(seed);
    Observations out;
    out.values.reserve(n);
    switch (model.id) {
        case ModelId::ChiSquaredLog: {
            // e^(x - xi) is standard exponential.
            std::exponential_distribution<double> expo(1.0);
            for (std::size_t i = 0; i < n; ++i) out.values.push_back(xi_true + std::log(expo(engine)));
            break;
        }
        case ModelId::GaussianShift: {
            std::normal_distribution<double> normal(xi_true, model.sigma_param);
            for (std::size_t i = 0; i < n; ++i) out.values.push_back(normal(engine));
            break;
        }
        case ModelId::TrigTranslational: {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = trig_inverse_cdf(unif(engine));
                out.values.push_back(std::clamp(wrap_half_period(xi_true + u), -kHalfPi, kHalfPi));
            }
            break;
        }
        case ModelId::BinomialTrigIRF: {
            const double c = std::cos(xi_true);
            std::bernoulli_distribution coin(std::clamp(c * c, 0.0, 1.0));
            for (std::size_t i = 0; i < n; ++i) out.values.push_back(coin(engine) ? 1.0 : 0.0);
            break;
        }
    }
    return out;
}

}  // namespace gaussn
