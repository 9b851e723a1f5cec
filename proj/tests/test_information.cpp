#include "gaussn/errors.hpp"
#include "gaussn/information.hpp"
#include "gaussn/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gaussn;

namespace {

std::vector<double> random_probes(const ModelSpec& m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double reach = m.is_line_model() ? 5.0 : 1.45;
    std::uniform_real_distribution<double> u(-reach, reach);
    std::vector<double> out(10);
    for (double& x : out) x = u(rng);
    return out;
}

// Binomial Fisher information from the item response function R = cos^2:
// R'^2 / (R (1 - R)) = sin^2 2xi / (sin^2 2xi / 4).
double binomial_fisher_oracle(double xi) {
    const double r = std::cos(xi) * std::cos(xi);
    const double dr = -std::sin(2.0 * xi);
    return dr * dr / (r * (1.0 - r));
}

}  // namespace

class FisherForms : public ::testing::TestWithParam<ModelId> {};

TEST_P(FisherForms, BothFormsMatchAnalyticAtRandomXi) {
    const auto m = ModelSpec::make(GetParam());
    for (double xi : random_probes(m, 2024)) {
        EXPECT_NEAR(fisher_gradient_form(m, xi), *m.analytic_fisher, 1e-6) << "xi=" << xi;
        EXPECT_NEAR(fisher_curvature_form(m, xi), *m.analytic_fisher, 1e-6) << "xi=" << xi;
    }
}

TEST_P(FisherForms, ReportIsTranslationInvariant) {
    const auto m = ModelSpec::make(GetParam());
    const auto probes = random_probes(m, 7);
    const auto r = fisher_report(m, probes);
    EXPECT_EQ(r.xi_probe_values, probes);
    EXPECT_LT(r.max_xi_variation, 2e-6);
    EXPECT_LT(r.max_form_discrepancy, 2e-6);
}

INSTANTIATE_TEST_SUITE_P(AllModels, FisherForms,
                         ::testing::Values(ModelId::ChiSquaredLog, ModelId::GaussianShift,
                                           ModelId::TrigTranslational, ModelId::BinomialTrigIRF),
                         [](const auto& info) { return std::string(model_name(info.param)); });

TEST(Fisher, GaussianScalesWithSigma) {
    for (double sigma : {0.5, 2.0, 3.0}) {
        const auto m = ModelSpec::make(ModelId::GaussianShift, sigma);
        EXPECT_NEAR(fisher_gradient_form(m, 0.7), 1.0 / (sigma * sigma), 1e-6);
        EXPECT_NEAR(fisher_curvature_form(m, 0.7), 1.0 / (sigma * sigma), 1e-6);
    }
}

TEST(Fisher, BinomialOracleAwayFromZero) {
    const auto m = ModelSpec::make(ModelId::BinomialTrigIRF);
    for (double xi : {0.3, -0.9, 1.2}) {
        EXPECT_NEAR(fisher_gradient_form(m, xi), binomial_fisher_oracle(xi), 1e-7);
    }
}

TEST(Fisher, BinomialLimitAtOrigin) {
    // One outcome is impossible at xi = 0; the information is its limit.
    const auto m = ModelSpec::make(ModelId::BinomialTrigIRF);
    EXPECT_NEAR(fisher_gradient_form(m, 0.0), 4.0, 1e-6);
    EXPECT_NEAR(fisher_curvature_form(m, 0.0), 4.0, 1e-5);
}

TEST(Fisher, PriorMeasure) {
    EXPECT_EQ(prior_measure(ModelSpec::make(ModelId::TrigTranslational)), 2.0);
    EXPECT_EQ(prior_measure(ModelSpec::make(ModelId::ChiSquaredLog)), 1.0);
    EXPECT_EQ(prior_measure(ModelSpec::make(ModelId::GaussianShift, 4.0)), 0.25);
}

TEST(Fisher, InformationUsesAnalyticValue) {
    EXPECT_EQ(fisher_information(ModelSpec::make(ModelId::BinomialTrigIRF)), 4.0);
    EXPECT_EQ(fisher_information(ModelSpec::make(ModelId::GaussianShift, 2.0)), 0.25);
}

TEST(Fisher, Errors) {
    const auto trig = ModelSpec::make(ModelId::TrigTranslational);
    EXPECT_THROW(fisher_gradient_form(trig, 2.0), InputError);
    EXPECT_THROW(fisher_report(trig, std::vector<double>{}), InputError);
}

TEST(Fisher, LooseToleranceStillClose) {
    const auto m = ModelSpec::make(ModelId::TrigTranslational);
    const auto cfg = QuadratureConfig{}.with_tolerance(1e-6);
    EXPECT_NEAR(fisher_gradient_form(m, 0.2, cfg), 4.0, 1e-4);
}
