#include "gaussn/errors.hpp"
#include "gaussn/posterior.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gaussn;

namespace {

constexpr double kPi = std::numbers::pi;

const ModelSpec kChi = ModelSpec::make(ModelId::ChiSquaredLog);
const ModelSpec kTrig = ModelSpec::make(ModelId::TrigTranslational);
const ModelSpec kGauss = ModelSpec::make(ModelId::GaussianShift);

std::pair<double, double> moments(const PosteriorGrid& g) {
    double m0 = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i + 1 < g.xi_values.size(); ++i) {
        const double h = g.xi_values[i + 1] - g.xi_values[i];
        for (std::size_t j : {i, i + 1}) {
            const double w = 0.5 * h * g.densities[j];
            m0 += w;
            m1 += w * g.xi_values[j];
            m2 += w * g.xi_values[j] * g.xi_values[j];
        }
    }
    const double mean = m1 / m0;
    return {mean, std::sqrt(m2 / m0 - mean * mean)};
}

// max over |delta| <= 3/sqrt(N) of N |H(delta) + delta^2/2| for the
// chi-squared model, on a fine grid in long double.
double chi_log_deviation_oracle(std::size_t n) {
    const long double w = 3.0L / std::sqrt(static_cast<long double>(n));
    long double best = 0;
    for (int k = -200000; k <= 200000; ++k) {
        const long double d = w * k / 200000.0L;
        const long double dev = n * std::fabs(d + 1.0L - std::exp(d) + d * d / 2.0L);
        best = std::max(best, dev);
    }
    return static_cast<double>(best);
}

double log_log_slope(const std::vector<double>& n, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double x = std::log(n[i]), v = std::log(y[i]);
        sx += x, sy += v, sxx += x * x, sxy += x * v;
    }
    const double k = static_cast<double>(n.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

TEST(Posterior, NormalizedOnDefaultGrid) {
    const auto obs = sample(kChi, 0.5, 40, 3);
    const auto p = posterior_from_observations(kChi, obs);
    EXPECT_TRUE(p.normalized);
    EXPECT_EQ(p.xi_values.size(), kDefaultGridSize);
    EXPECT_NEAR(grid_mass(p), 1.0, 1e-12);
    const double ml = ml_estimate(kChi, obs).value;
    EXPECT_NEAR(p.xi_values.front(), ml - 8.0 / std::sqrt(40.0), 1e-12);
    EXPECT_NEAR(p.xi_values.back(), ml + 8.0 / std::sqrt(40.0), 1e-12);
}

TEST(Posterior, LargeNDoesNotUnderflow) {
    const auto obs = sample(kChi, 0.0, 640, 1);
    const auto p = posterior_from_observations(kChi, obs);
    EXPECT_NEAR(grid_mass(p), 1.0, 1e-12);
    for (double d : p.densities) EXPECT_TRUE(std::isfinite(d));
}

TEST(Posterior, GridSizeValidation) {
    const auto obs = sample(kChi, 0.0, 5, 1);
    EXPECT_THROW(posterior_from_observations(kChi, obs, 100), InputError);
    EXPECT_THROW(posterior_asymptotic(kChi, 0.0, 0), InputError);
    EXPECT_THROW(gaussian_reference(0.0, 0.0, 10), InputError);
}

TEST(Posterior, RoutesAgreeForIdenticalObservations) {
    for (std::size_t n : {5u, 40u, 160u}) {
        const Observations obs{std::vector<double>(n, 0.37)};
        const auto direct = posterior_from_observations(kChi, obs);
        const auto asym = posterior_asymptotic(kChi, 0.37, n);
        ASSERT_EQ(direct.xi_values.size(), asym.xi_values.size());
        for (std::size_t i = 0; i < direct.xi_values.size(); ++i) {
            EXPECT_NEAR(direct.xi_values[i], asym.xi_values[i], 1e-12);
            EXPECT_NEAR(direct.densities[i], asym.densities[i], 1e-6);
        }
    }
}

TEST(Posterior, GaussianExactnessRandomized) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size(1, 200);
    for (int trial = 0; trial < 10; ++trial) {
        for (double sigma : {0.5, 1.0, 2.0}) {
            const auto m = ModelSpec::make(ModelId::GaussianShift, sigma);
            const std::size_t n = size(rng);
            const auto obs = sample(m, 1.5 * trial - 4.0, n, rng());
            const auto post = posterior_from_observations(m, obs);
            const auto ref = gaussian_reference_on(post.xi_values, ml_estimate(m, obs).value,
                                                   *m.analytic_fisher, n);
            const auto c = compare_to_gaussian(post, ref);
            EXPECT_LE(c.sup_log_deviation, 1e-10) << "n=" << n << " sigma=" << sigma;
            EXPECT_LE(std::abs(c.kl_to_gaussian), 1e-10);
        }
    }
}

TEST(Posterior, TrigAsymptoticClosedForm) {
    const auto p = posterior_asymptotic(kTrig, 0.0, 8);
    // exp(8 (cos 2d - 1)) normalized by the same trapezoid rule
    std::vector<double> oracle;
    for (double d : p.xi_values) oracle.push_back(std::exp(8.0 * (std::cos(2.0 * d) - 1.0)));
    PosteriorGrid o{p.xi_values, oracle, false};
    const double mass = grid_mass(o);
    for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(p.densities[i], oracle[i] / mass, 1e-10);
    for (double d : p.xi_values) EXPECT_LE(std::abs(d), kPi / 2.0 + 1e-15);
}

TEST(Posterior, TrigAsymptoticIsShiftedToZero) {
    const auto a = posterior_asymptotic(kTrig, 0.0, 8);
    const auto b = posterior_asymptotic(kTrig, 0.9, 8);
    EXPECT_EQ(a.xi_values, b.xi_values);
    EXPECT_EQ(a.densities, b.densities);
}

TEST(Posterior, GaussianAsymptoticIsReference) {
    const auto p = posterior_asymptotic(kGauss, 2.0, 30);
    const auto r = gaussian_reference(2.0, 1.0, 30);
    EXPECT_LE(compare_to_gaussian(p, r).sup_log_deviation, 1e-10);
}

TEST(Reference, StandardDeviation) {
    EXPECT_NEAR(moments(gaussian_reference(0.0, 1.0, 160)).second, 1.0 / std::sqrt(160.0), 1e-7);
    EXPECT_NEAR(moments(gaussian_reference(0.0, 4.0, 8)).second, 1.0 / std::sqrt(32.0), 1e-7);
    const auto [mean, sd] = moments(gaussian_reference(5.0, 1.0, 1));
    EXPECT_NEAR(mean, 5.0, 1e-12);
    EXPECT_NEAR(sd, 1.0, 1e-7);
}

TEST(Reference, CentralIntervalIsThreeSigma) {
    const auto [lo, hi] = central_interval(gaussian_reference(0.0, 1.0, 160));
    const double s = 1.0 / std::sqrt(160.0);
    EXPECT_NEAR(lo, -3.0 * s, 1e-3 * s);
    EXPECT_NEAR(hi, 3.0 * s, 1e-3 * s);
    EXPECT_THROW(central_interval(gaussian_reference(0.0, 1.0, 160), 1.0), InputError);
}

TEST(Compare, IdenticalGridsGiveZero) {
    const auto r = gaussian_reference(0.3, 1.0, 10);
    const auto c = compare_to_gaussian(r, r);
    EXPECT_EQ(c.sup_log_deviation, 0.0);
    EXPECT_EQ(c.kl_to_gaussian, 0.0);
}

TEST(Compare, GridMismatchRejected) {
    EXPECT_THROW(compare_to_gaussian(gaussian_reference(0.0, 1.0, 10), gaussian_reference(0.1, 1.0, 10)), InputError);
    EXPECT_THROW(compare_to_gaussian(gaussian_reference(0.0, 1.0, 10), gaussian_reference(0.0, 1.0, 10, 501)),
                 InputError);
}

TEST(Compare, ChiSquaredAtMinimalNMatchesProfileOracle) {
    const auto p = posterior_asymptotic(kChi, 0.0, 160);
    const auto r = gaussian_reference_on(p.xi_values, 0.0, 1.0, 160);
    const auto c = compare_to_gaussian(p, r);
    EXPECT_NEAR(c.sup_log_deviation, chi_log_deviation_oracle(160), 1e-6);
    // frozen regression value
    EXPECT_NEAR(c.sup_log_deviation, 0.377891, 1e-6);
    EXPECT_NEAR(c.interval.first, -3.0 / std::sqrt(160.0), 1e-6);
    EXPECT_NEAR(c.interval.second, 3.0 / std::sqrt(160.0), 1e-6);
}

TEST(Compare, SupLogDeviationDecreasesChiSquared) {
    double prev = INFINITY;
    for (std::size_t n : {10u, 40u, 160u, 640u}) {
        const auto p = posterior_asymptotic(kChi, 0.0, n);
        const auto c = compare_to_gaussian(p, gaussian_reference_on(p.xi_values, 0.0, 1.0, n));
        EXPECT_LT(c.sup_log_deviation, prev) << "N=" << n;
        prev = c.sup_log_deviation;
    }
}

TEST(Compare, SupLogDeviationDecreasesTrig) {
    double prev = INFINITY;
    for (std::size_t n : {2u, 4u, 8u, 32u}) {
        const auto p = posterior_asymptotic(kTrig, 0.0, n);
        const auto c = compare_to_gaussian(p, gaussian_reference_on(p.xi_values, 0.0, 4.0, n));
        EXPECT_LT(c.sup_log_deviation, prev) << "N=" << n;
        prev = c.sup_log_deviation;
    }
}

TEST(Compare, TrigKlDecreases) {
    std::vector<double> kl;
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
        const auto p = posterior_asymptotic(kTrig, 0.0, n);
        kl.push_back(compare_to_gaussian(p, gaussian_reference_on(p.xi_values, 0.0, 4.0, n)).kl_to_gaussian);
    }
    for (std::size_t i = 1; i < kl.size(); ++i) EXPECT_LT(kl[i], kl[i - 1]);
    EXPECT_GT(kl[0], 0.0);
}

TEST(Concentration, WidthScalesAsInverseSqrtN) {
    const std::vector<double> ns{10, 40, 160, 640};
    for (const auto& m : {kChi, kTrig, kGauss, ModelSpec::make(ModelId::BinomialTrigIRF)}) {
        std::vector<double> widths;
        for (double n : ns) {
            const auto [lo, hi] = central_interval(posterior_asymptotic(m, 0.0, static_cast<std::size_t>(n)));
            widths.push_back(hi - lo);
        }
        EXPECT_NEAR(log_log_slope(ns, widths), -0.5, 0.05) << model_name(m.id);
    }
}

TEST(Posterior, BinomialScoreForm) {
    const auto m = ModelSpec::make(ModelId::BinomialTrigIRF);
    const Observations obs{{1, 1, 1, 0, 1, 1, 0, 1}};
    const auto p = posterior_from_observations(m, obs);
    EXPECT_NEAR(grid_mass(p), 1.0, 1e-12);
    // mode at acos(sqrt(6/8))
    std::size_t best = 0;
    for (std::size_t i = 0; i < p.densities.size(); ++i) {
        if (p.densities[i] > p.densities[best]) best = i;
    }
    const double step = p.xi_values[1] - p.xi_values[0];
    EXPECT_NEAR(p.xi_values[best], std::acos(std::sqrt(0.75)), step);
}

TEST(Posterior, Deterministic) {
    const auto obs = sample(kTrig, 0.2, 8, 7);
    EXPECT_EQ(posterior_from_observations(kTrig, obs).densities, posterior_from_observations(kTrig, obs).densities);
}
