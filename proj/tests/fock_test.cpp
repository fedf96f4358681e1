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

#include "gridsense/fock.hpp"

#include <gtest/gtest.h>

#include "gridsense/metrics.hpp"
#include "gridsense/quad.hpp"

using namespace gridsense;

namespace {

double interior_error(const MatrixXc &a, const MatrixXc &b, int keep) {
    return (a.topLeftCorner(keep, keep) - b.topLeftCorner(keep, keep)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(FockSpace, RejectsTinyDimension) { EXPECT_THROW(FockSpace<double>(1), ValidationError); }

TEST(FockSpace, LadderEntries) {
    FockSpace<double> s(6);
    const auto &a = s.annihilation();
    for (int n = 1; n < 6; ++n) {
        EXPECT_DOUBLE_EQ(a(n - 1, n).real(), std::sqrt(double(n)));
    }
    EXPECT_EQ(a.cwiseAbs().sum(), [&] {
        double t = 0;
        for (int n = 1; n < 6; ++n) t += std::sqrt(double(n));
        return t;
    }());
    EXPECT_EQ((s.creation() - a.adjoint()).norm(), 0.0);
}

TEST(Quadratures, DimTwo) {
    FockSpace<double> s(2);
    auto [q, p] = quadratures(s);
    EXPECT_NEAR(q(0, 1).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(q(1, 0).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_LT((p - p.adjoint()).norm(), 1e-15);
}

TEST(Quadratures, CanonicalCommutatorOnInterior) {
    FockSpace<double> s(30);
    auto [q, p] = quadratures(s);
    MatrixXc c = q * p - p * q;
    MatrixXc expect = cdouble(0, 1) * MatrixXc::Identity(30, 30);
    EXPECT_LT(interior_error(c, expect, 29), 1e-13);
    EXPECT_GT(std::abs(c(29, 29) - expect(29, 29)), 1.0);
}

TEST(Quadratures, VacuumVariances) {
    FockSpace<double> s(100);
    auto [q, p] = quadratures(s);
    auto vac = vacuum(s);
    EXPECT_NEAR(expectation<double>(q * q, vac).real(), 0.5, 1e-14);
    EXPECT_NEAR(expectation<double>(p * p, vac).real(), 0.5, 1e-14);
}

TEST(Displacement, ZeroIsIdentity) {
    FockSpace<double> s(20);
    EXPECT_EQ((displacement(s, cdouble(0)) - s.identity()).norm(), 0.0);
}

TEST(Displacement, RejectsNonFinite) {
    FockSpace<double> s(20);
    EXPECT_THROW(displacement(s, cdouble(std::nan(""), 0)), ValidationError);
    EXPECT_THROW(displacement(s, cdouble(0, INFINITY)), ValidationError);
}

TEST(Displacement, CoherentPhotonNumber) {
    FockSpace<double> s(100);
    CVector<double> v = displacement(s, cdouble(1)) * vacuum(s).vector();
    auto st = CavityState<double>::pure(s, v);
    EXPECT_NEAR(mean_photon_number(st), 1.0, 1e-8);
}

TEST(Displacement, InverseAndUnitarity) {
    FockSpace<double> s(120);
    MatrixXc d = displacement(s, cdouble(0.7, -1.1));
    MatrixXc dm = displacement(s, cdouble(-0.7, 1.1));
    EXPECT_LT(interior_error(d * dm, s.identity(), 60), 1e-10);
    EXPECT_LT(interior_error(d.adjoint() * d, s.identity(), 60), 1e-10);
}

TEST(Displacement, UvConvention) {
    // exp(-iu p + iv q) = D(beta) with u = sqrt2 Re beta, v = sqrt2 Im beta.
    FockSpace<double> s(120);
    auto [q, p] = quadratures(s);
    const double u = 0.4, v = -0.9;
    MatrixXc gen = cdouble(0, -u) * p + cdouble(0, v) * q;
    MatrixXc direct = expm<double>(gen);
    MatrixXc d = displacement(s, cdouble(u, v) / std::sqrt(2.0));
    EXPECT_LT(interior_error(direct, d, 60), 1e-10);
}

TEST(Displacement, CompositionPhase) {
    FockSpace<double> s(140);
    for (auto [b1, b2] : {std::pair{cdouble(1.2, 0.3), cdouble(-0.4, 1.5)}, std::pair{cdouble(0, 2), cdouble(2, 0)},
                          std::pair{cdouble(-1.3, -0.8), cdouble(0.9, -1.1)}}) {
        MatrixXc lhs = displacement(s, b1) * displacement(s, b2);
        MatrixXc rhs = expi(std::imag(b1 * std::conj(b2))) * displacement(s, b1 + b2);
        EXPECT_LT(interior_error(lhs, rhs, 50), 1e-8);
    }
}

TEST(Displacement, ActionMatchesDenseMatrix) {
    FockSpace<double> s(150);
    auto psi = coherent_state(s, cdouble(1.5, -0.5));
    for (cdouble b : {cdouble(-std::sqrt(M_PI), 0), cdouble(0, std::sqrt(M_PI)), cdouble(0.3, 0.8)}) {
        CVector<double> a = apply_displacement<double>(b, psi.vector());
        CVector<double> d = displacement(s, b) * psi.vector();
        EXPECT_LT((a - d).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Stabilizers, AmplitudesAndVacuumValue) {
    FockSpace<double> s(200);
    auto st = stabilizers(s);
    auto vac = vacuum(s);
    EXPECT_NEAR(std::abs(expectation(st.sp, vac)), std::exp(-M_PI / 2), 1e-8);
    EXPECT_NEAR(std::abs(expectation(st.sq, vac)), std::exp(-M_PI / 2), 1e-8);
    auto [q, p] = quadratures(s);
    MatrixXc sp_direct = expm<double>(cdouble(0, std::sqrt(2 * M_PI)) * p);
    EXPECT_LT(interior_error(sp_direct, st.sp, 80), 1e-9);
}

TEST(Stabilizers, CommuteOnStatesAwayFromCutoff) {
    FockSpace<double> s(400);
    auto st = stabilizers(s);
    auto g = grid_state(s, 0.3);
    auto pop = g.populations();
    ASSERT_LT(pop.tail(100).sum(), 1e-12);
    CVector<double> v = g.vector();
    EXPECT_LT((st.sp * (st.sq * v) - st.sq * (st.sp * v)).norm(), 1e-6);
}

TEST(States, NumberState) {
    FockSpace<double> s(10);
    EXPECT_EQ(mean_photon_number(number_state(s, 3)), 3.0);
    EXPECT_THROW(number_state(s, 10), TruncationError);
}

TEST(States, CoherentMatchesDisplacedVacuum) {
    FockSpace<double> s(80);
    cdouble a(1.1, -0.6);
    CVector<double> d = displacement(s, a) * vacuum(s).vector();
    EXPECT_LT((coherent_state(s, a).vector() - d).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(States, TruncationOverflowDetected) {
    FockSpace<double> s(30);
    EXPECT_THROW(coherent_state(s, cdouble(4.0)), TruncationError);
    EXPECT_THROW(squeezed_vacuum(s, 0.2, Axis::q), TruncationError);
    EXPECT_THROW(grid_state(s, 0.2), TruncationError);
}

TEST(States, GridValidation) {
    FockSpace<double> s(50);
    EXPECT_THROW(grid_state(s, 0.0), ValidationError);
    EXPECT_THROW(grid_state(s, 1.0), ValidationError);
    EXPECT_THROW(squeezed_vacuum(s, -0.1, Axis::p), ValidationError);
}

TEST(States, GridPhotonNumber) {
    // The comb envelope gives Var q = Var p = 1/(2 Delta^2), so n = 1/(2 Delta^2) - 1/2 up to O(Delta^2).
    FockSpace<double> s(400);
    auto g = grid_state(s, 0.2);
    const double n = mean_photon_number(g);
    EXPECT_NEAR(n, 1 / (2 * 0.04) - 0.5, 0.1);
}

TEST(States, GridQuadratureSymmetry) {
    FockSpace<double> s(400);
    auto stab = stabilizers(s);
    for (double d : {0.2, 0.25, 0.3}) {
        auto g = grid_state(s, d);
        auto r = squeezing_report(g, stab);
        EXPECT_LT(std::abs(r.delta_p - r.delta_q), 0.05 * d) << d;
        EXPECT_NEAR(std::abs(expectation(stab.sp, g)), std::exp(-M_PI * d * d / 2), 0.02);
    }
}

TEST(States, CompassPhotonNumber) {
    FockSpace<double> s(400);
    auto c = compass_state(s, cdouble(std::sqrt(12.0)));
    // Corrections to n = |a|^2 are O(e^{-|a|^2}).
    EXPECT_NEAR(mean_photon_number(c), 12.0, 1e-3);
}

TEST(States, SymmetryPointMoments) {
    FockSpace<double> s(400);
    for (const auto &st : {compass_state(s, cdouble(std::sqrt(12.0))), grid_state(s, 0.2), number_state(s, 5)}) {
        auto m = quadrature_moments(st);
        EXPECT_LT(std::abs(m.mean_p), 1e-10);
        EXPECT_LT(std::abs(m.mean_q), 1e-10);
        EXPECT_LT(m.sym_pq, 1e-10);
    }
}

TEST(States, MixedValidation) {
    FockSpace<double> s(4);
    MatrixXc rho = MatrixXc::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    EXPECT_NO_THROW(CavityState<double>::mixed(s, rho));
    MatrixXc bad = rho;
    bad(0, 1) = 0.1;
    EXPECT_THROW(CavityState<double>::mixed(s, bad), ValidationError);
    MatrixXc neg = MatrixXc::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(CavityState<double>::mixed(s, neg), ValidationError);
    CVector<double> v = CVector<double>::Zero(4);
    v(0) = 1.1;
    EXPECT_THROW(CavityState<double>::pure(s, v), ValidationError);
}

TEST(Expectation, BasicValues) {
    FockSpace<double> s(60);
    auto vac = vacuum(s);
    EXPECT_EQ(expectation(s.number(), vac), cdouble(0));
    auto coh = coherent_state(s, cdouble(0));
    EXPECT_NEAR(std::abs(expectation(stabilizers(s).sp, coh) - std::exp(-M_PI / 2)), 0, 1e-12);
    auto c2 = coherent_state(s, cdouble(1.0, 0.5));
    EXPECT_NEAR(expectation<double>(s.identity(), CavityState<double>::mixed(s, c2.density())).real(), 1.0, 1e-12);
    FockSpace<double> other(61);
    EXPECT_THROW(expectation(other.number(), vac), DimensionMismatch);
}

TEST(CompassOverlap, Anchors) {
    const double a = std::sqrt(12.0);
    EXPECT_DOUBLE_EQ(compass_overlap(a, 0), 1.0);
    // With the overlap phase 2 a Im(beta), both cosines vanish at pi/(4a).
    const double b = M_PI / (4 * a);
    EXPECT_NEAR(compass_overlap(a, cdouble(b, b)), 0.0, 1e-15);
    EXPECT_GT(compass_overlap(a, cdouble(0.01, 0)), 0.99);
}

TEST(CompassOverlap, MatchesExactOverlap) {
    FockSpace<double> s(400);
    const double a = std::sqrt(12.0);
    auto c = compass_state(s, cdouble(a));
    for (cdouble b : {cdouble(0.1, 0.1), cdouble(0.05, -0.12), cdouble(0.2, 0.0)}) {
        cdouble exact = c.vector().dot(displacement(s, b) * c.vector());
        double approx = compass_overlap(a, b);
        EXPECT_NEAR(exact.real(), approx, 0.05 * std::abs(exact)) << b;
    }
}

TEST(QuadPrecision, SqueezedConjugateQuadratureAtLargeDimension) {
    // In double and quad precision alike the dim=400 squeezed vacuum is cut
    // off; at dim=600 it reaches the untruncated value 1/Delta.
    FockSpace<quad> s(600);
    auto st = squeezed_vacuum<quad>(s, quad(0.2), Axis::q);
    quad dp = squeezing_parameter(st, Target::sp);
    quad dq = squeezing_parameter(st, Target::sq);
    EXPECT_NEAR(static_cast<double>(dq), 0.2, 1e-6);
    EXPECT_NEAR(static_cast<double>(dp), 5.0, 1e-3);
}
