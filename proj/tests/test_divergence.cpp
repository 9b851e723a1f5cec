#include "gaussn/divergence.hpp"
#include "gaussn/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gaussn;

namespace {

constexpr double kPi = std::numbers::pi;

const ModelSpec kChi = ModelSpec::make(ModelId::ChiSquaredLog);
const ModelSpec kGauss = ModelSpec::make(ModelId::GaussianShift, 1.5);
const ModelSpec kTrig = ModelSpec::make(ModelId::TrigTranslational);
const ModelSpec kBinom = ModelSpec::make(ModelId::BinomialTrigIRF);

std::vector<double> random_deltas(double reach, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-reach, reach);
    std::vector<double> out(n);
    for (double& d : out) d = u(rng);
    return out;
}

}  // namespace

TEST(HFunctional, ZeroAtOrigin) {
    for (const auto& m : {kChi, kGauss, kTrig, kBinom}) {
        const auto e = h_functional(m, 0.0);
        EXPECT_EQ(e.value, 0.0);
        EXPECT_EQ(e.delta, 0.0);
    }
}

TEST(HFunctional, ChiSquaredMatchesClosedForm) {
    for (double d : random_deltas(3.0, 50, 1)) {
        const auto e = h_functional(kChi, d);
        EXPECT_NEAR(e.value, d + 1.0 - std::exp(d), 1e-7) << "delta=" << d;
        EXPECT_EQ(e.method, HMethod::quadrature);
        EXPECT_LT(e.value, 0.0);
    }
}

TEST(HFunctional, GaussianMatchesClosedForm) {
    for (double d : random_deltas(4.0, 20, 2)) {
        EXPECT_NEAR(h_functional(kGauss, d).value, -d * d / (2.0 * 1.5 * 1.5), 1e-7);
    }
}

TEST(HFunctional, TrigMatchesClosedForm) {
    for (double d : random_deltas(kPi, 50, 3)) {
        const auto e = h_functional(kTrig, d);
        EXPECT_NEAR(e.value, std::cos(2.0 * d) - 1.0, 1e-7) << "delta=" << d;
        EXPECT_LE(e.value, 0.0);
    }
}

TEST(HFunctional, TrigKnownPoints) {
    EXPECT_NEAR(h_functional(kTrig, kPi / 4.0).value, -1.0, 1e-8);
    EXPECT_NEAR(h_functional(kTrig, kPi / 2.0).value, -2.0, 1e-8);
    EXPECT_NEAR(h_functional(kTrig, kPi).value, 0.0, 1e-8);
}

TEST(HFunctional, BinomialUsesTrigCarrier) {
    EXPECT_EQ(h_carrier(kBinom).id, ModelId::TrigTranslational);
    EXPECT_EQ(h_carrier(kChi).id, ModelId::ChiSquaredLog);
    EXPECT_EQ(h_functional(kBinom, 0.6).value, h_functional(kTrig, 0.6).value);
}

TEST(HFunctional, PairFormUsesDifference) {
    // delta = xi_ml - xi
    const auto pair = h_functional_pair(kChi, 0.5, -0.3);
    EXPECT_NEAR(pair.value, h_closed_form(kChi, 0.8), 1e-8);
    EXPECT_NEAR(pair.delta, 0.8, 1e-15);
    EXPECT_NEAR(h_functional_pair(kTrig, 0.2, -0.4).value, std::cos(1.2) - 1.0, 1e-8);
}

TEST(HFunctional, Errors) {
    EXPECT_THROW(h_functional(kTrig, 3.5), InputError);
    EXPECT_THROW(h_functional(kChi, NAN), InputError);
    EXPECT_THROW(h_closed_form(kBinom, 0.1), UnsupportedError);
    EXPECT_THROW(h_derivative_analytic(kBinom, 2, 0.1), UnsupportedError);
    EXPECT_THROW(h_derivative_analytic(kChi, 0, 0.1), InputError);
    EXPECT_THROW(h_derivative_numeric(kChi, 5, 0.1), UnsupportedError);
    EXPECT_THROW(max_abs_derivative(kChi, 3, -1.0), InputError);
}

TEST(HDerivative, AnalyticChiSquared) {
    EXPECT_NEAR(h_derivative_analytic(kChi, 1, 0.5), 1.0 - std::exp(0.5), 1e-15);
    for (int order = 2; order <= 5; ++order) {
        EXPECT_NEAR(h_derivative_analytic(kChi, order, 0.5), -std::exp(0.5), 1e-15);
    }
}

TEST(HDerivative, TrigAnchorsAtZero) {
    const double anchors[] = {0.0, -4.0, 0.0, 16.0};
    for (int order = 1; order <= 4; ++order) {
        EXPECT_NEAR(h_derivative_analytic(kTrig, order, 0.0), anchors[order - 1], 1e-14);
        EXPECT_NEAR(h_derivative_numeric(kTrig, order, 0.0), anchors[order - 1], order <= 2 ? 1e-5 : 1e-3);
    }
}

TEST(HDerivative, NumericMatchesAnalytic) {
    for (int order = 1; order <= 4; ++order) {
        const double tol = order <= 2 ? 1e-6 : 1e-4;
        EXPECT_NEAR(h_derivative_numeric(kTrig, order, 0.3), h_derivative_analytic(kTrig, order, 0.3), tol);
        EXPECT_NEAR(h_derivative_numeric(kChi, order, 0.2), h_derivative_analytic(kChi, order, 0.2), tol);
        EXPECT_NEAR(h_derivative_numeric(kGauss, order, -0.7), h_derivative_analytic(kGauss, order, -0.7), tol);
    }
}

TEST(HDerivative, NumericNearPeriodBoundary) {
    EXPECT_NEAR(h_derivative_numeric(kTrig, 2, kPi), -4.0, 1e-5);
}

TEST(HDerivative, GaussianHigherOrdersVanish) {
    EXPECT_EQ(h_derivative_analytic(kGauss, 3, 1.0), 0.0);
    EXPECT_NEAR(h_derivative_analytic(kGauss, 2, 1.0), -1.0 / 2.25, 1e-15);
}

TEST(MaxAbsDerivative, ChiSquaredThirdOrder) {
    for (std::size_t n : {10u, 160u}) {
        const double w = 3.0 / std::sqrt(double(n));
        EXPECT_NEAR(max_abs_derivative(kChi, 3, w), std::exp(w), 1e-9);
    }
}

TEST(MaxAbsDerivative, OtherModels) {
    EXPECT_EQ(max_abs_derivative(kTrig, 4, 0.5), 16.0);
    EXPECT_EQ(max_abs_derivative(kBinom, 4, 0.5), 16.0);
    EXPECT_EQ(max_abs_derivative(kGauss, 3, 2.0), 0.0);
    // |8 sin 2 delta| on |delta| <= 0.5 peaks at the ends
    EXPECT_NEAR(max_abs_derivative(kTrig, 3, 0.5), 8.0 * std::sin(1.0), 1e-12);
    // |1 - e^delta| on |delta| <= 0.4 peaks at delta = 0.4
    EXPECT_NEAR(max_abs_derivative(kChi, 1, 0.4), std::exp(0.4) - 1.0, 1e-12);
    EXPECT_NEAR(max_abs_derivative(kTrig, 3, 0.0), 0.0, 1e-14);
}
