// Copyright 2026 The gridsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gridsense/analytics.hpp"

#include <gtest/gtest.h>

#include "gridsense/metrics.hpp"

using namespace gridsense;

namespace {
const double kRoot2Pi = std::sqrt(2.0 * M_PI);
}

TEST(EstimateMesh, Layout) {
    auto m = estimate_mesh(3);
    ASSERT_EQ(m.size(), 8u);
    EXPECT_DOUBLE_EQ(m.front(), -kRoot2Pi / 2);
    EXPECT_NEAR(m[1] - m[0], kRoot2Pi / 8, 1e-15);
    EXPECT_THROW(estimate_mesh(0), ValidationError);
}

TEST(TextbookProb, OnMeshAndZeros) {
    for (int m : {1, 3, 6}) {
        const int n = 1 << m;
        auto mesh = estimate_mesh(m);
        EXPECT_NEAR(textbook_prob(mesh[2 % n], mesh[2 % n], m), 1.0, 1e-14);
        for (int k = 1; k < n; ++k) {
            EXPECT_NEAR(textbook_prob(mesh[0] + kRoot2Pi * k / n, mesh[0], m), 0.0, 1e-14);
        }
    }
}

TEST(TextbookProb, NearSingularityIsSmooth) {
    const double v = 0.1;
    for (double eps : {1e-9, 1e-7, 2e-6}) {
        double a = textbook_prob(v + eps, v, 5);
        double b = textbook_prob(v + kRoot2Pi + eps, v, 5);
        EXPECT_NEAR(a, b, 1e-10);
        EXPECT_LE(a, 1.0);
        EXPECT_GT(a, 1.0 - 1e-6);
    }
}

TEST(TextbookProb, NormalizedOverMesh) {
    for (int m = 1; m <= 8; ++m) {
        for (double v : {-1.2, -0.31, 0.0, 0.77}) {
            double s = 0;
            for (double ve : estimate_mesh(m)) s += textbook_prob(ve, v, m);
            EXPECT_NEAR(s, 1.0, 1e-10);
        }
    }
}

TEST(TextbookProb, ShiftInvariant) {
    for (double d : {0.0, 0.13, -0.6}) {
        EXPECT_NEAR(textbook_prob(0.2 + d, 0.5 + d, 4), textbook_prob(0.2, 0.5, 4), 1e-12);
        EXPECT_NEAR(textbook_prob(0.2 + kRoot2Pi, 0.5, 4), textbook_prob(0.2, 0.5, 4), 1e-12);
    }
}

TEST(BruteForce, NormalizedOverMesh) {
    for (int m = 1; m <= 3; ++m) {
        for (double v : {-0.9, 0.0, 0.4}) {
            double s = 0;
            for (double ve : estimate_mesh(m)) s += brute_force_pe_prob(ve, v, m);
            EXPECT_NEAR(s, 1.0, 1e-10) << m << " " << v;
        }
    }
    EXPECT_THROW(brute_force_pe_prob(0, 0, 5), ValidationError);
}

TEST(BruteForce, ShiftInvariantAndNonNegative) {
    for (double v : {-1.0, -0.2, 0.35, 1.1}) {
        for (double ve : estimate_mesh(2)) {
            double p = brute_force_pe_prob(ve, v, 2);
            EXPECT_GE(p, -1e-14);
            EXPECT_NEAR(p, brute_force_pe_prob(ve + 0.3, v + 0.3, 2), 1e-12);
        }
    }
}

TEST(BruteForce, NoiselessLimitOfGaussianFactorIsClosedForm) {
    // Dropping the vacuum weight reduces the four-fold sum to sin^2(N x)/(N^2 sin^2 x);
    // with the weight the two differ, so only the peak location is shared.
    for (int m = 1; m <= 3; ++m) {
        auto mesh = estimate_mesh(m);
        const double v = mesh[1];
        int best = 0;
        for (size_t k = 1; k < mesh.size(); ++k) {
            if (brute_force_pe_prob(mesh[k], v, m) > brute_force_pe_prob(mesh[best], v, m)) best = int(k);
        }
        EXPECT_EQ(best, 1) << m;
    }
}

TEST(Marginal, UniformOverMesh) {
    for (int m : {1, 4, 8}) {
        auto mesh = estimate_mesh(m);
        for (size_t y : {size_t(0), mesh.size() / 3, mesh.size() - 1}) {
            EXPECT_NEAR(marginal_probability(mesh[y], m).value, std::ldexp(1.0, -m), 1e-8);
        }
    }
}

TEST(MutualInformation, BoundedByRounds) {
    for (int m = 1; m <= 6; ++m) {
        double i = mutual_information(m).value;
        EXPECT_LE(i, m);
        EXPECT_GT(i, 0.0);
    }
}

TEST(MutualInformation, GoldenSingleRound) {
    // For M = 1 the outcome probabilities are cos^2 and sin^2 of pi d, d = v/sqrt(2 pi),
    // and the integral evaluates to 1/ln 2 - 1.
    GaussLegendre gl = gauss_legendre(400, -0.5, 0.5);
    double acc = 0;
    for (size_t k = 0; k < gl.nodes.size(); ++k) {
        double c = std::pow(std::cos(M_PI * gl.nodes[k]), 2), s = 1 - c;
        double f = 0;
        if (c > 0) f += c * std::log2(c);
        if (s > 0) f += s * std::log2(s);
        acc += gl.weights[k] * f;
    }
    const double golden = 1 / std::log(2.0) - 1;
    EXPECT_NEAR(1 + acc, golden, 1e-6);
    EXPECT_NEAR(mutual_information(1).value, golden, 1e-7);
    EXPECT_NEAR(accessible_information(1), 2 * golden, 2e-7);
}

TEST(MutualInformation, SlopeApproachesTwoBitsForBothQuadratures) {
    double prev = accessible_information(4);
    for (int m = 5; m <= 8; ++m) {
        double cur = accessible_information(m);
        EXPECT_NEAR(cur - prev, 2.0, 0.1) << m;
        prev = cur;
    }
}

TEST(Msd, BiasVarianceDecomposition) {
    for (int m = 2; m <= 8; ++m) {
        for (double v : {-0.4, 0.0, 0.123, 0.9}) {
            double b = estimator_bias(v, m);
            EXPECT_NEAR(msd(v, m), estimator_variance(v, m) + b * b, 1e-12);
        }
    }
}

TEST(Msd, BoundHoldsAtWorstMidpoint) {
    for (double alpha : {0.1, 0.25}) {
        for (int m = 4; m <= 8; ++m) {
            const int n = 1 << m;
            double worst = 0;
            for (double ve : estimate_mesh(m)) {
                double v = ve + kRoot2Pi / (2 * n);
                if (in_msd_interval(v, alpha)) worst = std::max(worst, msd(v, m));
            }
            EXPECT_GT(worst, 0.0);
            EXPECT_LE(worst, msd_bound(alpha, n)) << alpha << " " << m;
        }
    }
}

TEST(Msd, OnMeshEstimateIsExact) {
    // The closed form puts all weight on v~ = v when v is a mesh value.
    for (int m = 3; m <= 8; ++m) {
        auto mesh = estimate_mesh(m);
        EXPECT_LT(msd(mesh[mesh.size() / 2 + 1], m), 1e-25);
        EXPECT_LT(msd(mesh[1] + kRoot2Pi / (4 << m), m), msd(mesh[1] + kRoot2Pi / (4 << (m - 1)), m - 1));
    }
}

TEST(Msd, BiasIsOrderInverseN) {
    for (int m = 4; m <= 8; ++m) {
        const int n = 1 << m;
        for (double v : {-0.6, -0.1, 0.05, 0.6}) {
            ASSERT_TRUE(in_msd_interval(v, 0.25));
            EXPECT_LE(std::abs(estimator_bias(v, m)), kRoot2Pi / n) << m << " " << v;
        }
    }
}

TEST(Msd, BoundValidation) {
    EXPECT_THROW(msd_bound(0.0, 16), ValidationError);
    EXPECT_THROW(msd_bound(0.5, 16), ValidationError);
    EXPECT_FALSE(in_msd_interval(std::sqrt(M_PI / 2) * 0.9, 0.25));
}

TEST(Wehrl, SmearedOverlapMatchesMidpoint) {
    for (auto [re, im] : {std::pair{0.0, 0.0}, std::pair{0.5, -1.2}, std::pair{2.5, 3.0}}) {
        EXPECT_NEAR(smeared_coherent_overlap(re, im), smeared_coherent_overlap_midpoint(re, im, 256), 1e-5);
    }
}

TEST(Wehrl, OverlapBoundedByAreaAndDecays) {
    const double area = 1.0;  // (1/pi) * pi
    for (double x : {0.0, 0.3, 1.0, 3.0}) {
        EXPECT_LE(smeared_coherent_overlap(x, -x), area);
    }
    EXPECT_LT(smeared_coherent_overlap(8.0, 0.0), 1e-20);
}

TEST(Wehrl, BoundConvergedInPointsAndWindow) {
    double b = wehrl_bound_compass();
    EXPECT_NEAR(wehrl_bound_compass(384, 8.0), b, 1e-8);
    EXPECT_NEAR(wehrl_bound_compass(256, 10.0), b, 1e-6);
    EXPECT_GT(b, 2.0);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    auto gl = gauss_legendre(10, -1.0, 2.0);
    double s = 0;
    for (size_t k = 0; k < 10; ++k) s += gl.weights[k] * std::pow(gl.nodes[k], 7);
    EXPECT_NEAR(s, (std::pow(2.0, 8) - 1.0) / 8, 1e-11);
}
