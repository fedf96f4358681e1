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

#include "gridsense/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace gridsense;

namespace {

ProtocolSpec vacuum_protocol(Mode mode, int rounds, int dim = 400) {
    ProtocolSpec p;
    p.mode = mode;
    p.rounds = rounds;
    p.dim = dim;
    return p;
}

ProtocolSpec squeezed_protocol(int rounds, int dim) {
    ProtocolSpec p = vacuum_protocol(Mode::sp_only, rounds, dim);
    p.initial.kind = StateKind::squeezed_vacuum;
    p.initial.delta = 0.2;
    p.initial.axis = Axis::q;
    return p;
}

}  // namespace

TEST(Protocol, ModesAndTargets) {
    for (Mode m : {Mode::sp_only, Mode::sq_only, Mode::interleaved, Mode::sp_then_sq}) {
        EXPECT_EQ(mode_from_string(to_string(m)), m);
    }
    EXPECT_THROW(mode_from_string("zigzag"), ValidationError);
    ProtocolSpec p = vacuum_protocol(Mode::interleaved, 4);
    EXPECT_EQ(p.targets(), (std::vector<Target>{Target::sp, Target::sq, Target::sp, Target::sq}));
    p.mode = Mode::sp_then_sq;
    p.rounds = 5;
    EXPECT_EQ(p.targets(), (std::vector<Target>{Target::sp, Target::sp, Target::sp, Target::sq, Target::sq}));
}

TEST(Protocol, Validation) {
    ProtocolSpec p;
    p.rounds = 0;
    EXPECT_THROW(p.validate(), ValidationError);
    p.rounds = 4;
    p.noise.kappa = -1;
    EXPECT_THROW(p.validate(), ValidationError);
}

TEST(Protocol, ResourceLimits) {
    ProtocolSpec p = vacuum_protocol(Mode::sp_only, 17, 50);
    EXPECT_EQ(p.max_enumerated_rounds(), 16);
    EXPECT_THROW(enumerate(p), ResourceLimitError);
    p.noise.kerr = 1;
    EXPECT_EQ(p.max_enumerated_rounds(), 12);
    p.rounds = 13;
    EXPECT_THROW(enumerate(p), ResourceLimitError);
    p.noise.kappa = 1;
    EXPECT_EQ(p.max_enumerated_rounds(), 8);
    p.rounds = 9;
    EXPECT_THROW(enumerate(p), ResourceLimitError);
}

TEST(Enumerate, SingleNonAdaptiveRoundFromVacuum) {
    ProtocolSpec p = vacuum_protocol(Mode::sp_only, 1, 200);
    p.adaptive = false;
    auto r = enumerate(p);
    ASSERT_EQ(r.branches.size(), 2u);
    std::vector<double> w{r.branches[0].weight, r.branches[1].weight};
    std::sort(w.begin(), w.end());
    EXPECT_NEAR(w[1], 0.5 * (1 + std::exp(-M_PI / 2)), 1e-6);
    EXPECT_NEAR(w[0], 0.5 * (1 - std::exp(-M_PI / 2)), 1e-6);
}

TEST(Enumerate, SingleAdaptiveRoundIsBalanced) {
    auto r = enumerate(vacuum_protocol(Mode::sp_only, 1, 200));
    ASSERT_EQ(r.branches.size(), 2u);
    EXPECT_NEAR(r.branches[0].weight, 0.5, 1e-12);
    EXPECT_NEAR(r.branches[0].record.phases[0], M_PI / 2, 1e-12);
}

TEST(Enumerate, AverageIsBranchWeightedAndOrderFree) {
    auto r = enumerate(vacuum_protocol(Mode::sp_only, 5));
    EXPECT_NEAR(r.total_prob, 1.0, 1e-6);
    double dp = 0, w = 0;
    std::vector<std::pair<double, double>> pairs;
    for (const auto &b : r.branches) {
        dp += b.weight * b.delta_p;
        w += b.weight;
        pairs.emplace_back(b.weight, b.delta_p);
        b.record.validate();
    }
    EXPECT_NEAR(dp / w, r.final_delta_p(), 1e-12);
    std::reverse(pairs.begin(), pairs.end());
    double again = 0;
    for (auto [pw, d] : pairs) again += pw * d;
    EXPECT_NEAR(again / w, r.final_delta_p(), 1e-12);
}

TEST(Enumerate, NoiselessSqueezingImprovesFromVacuum) {
    auto r = enumerate(vacuum_protocol(Mode::sp_only, 8));
    ASSERT_EQ(r.rounds.size(), 9u);
    EXPECT_NEAR(r.rounds[0].delta_p, 1.0, 1e-6);
    for (int m = 1; m <= 8; ++m) {
        EXPECT_LT(r.rounds[m].delta_p, r.rounds[m - 1].delta_p) << m;
    }
}

TEST(Enumerate, NoiselessSqueezedInputImproves) {
    auto p = squeezed_protocol(8, 400);
    auto r = enumerate(p);
    FockSpace<double> s(400);
    auto st = squeezed_vacuum(s, 0.2, Axis::q);
    EXPECT_NEAR(r.rounds[0].delta_q, 0.2, 1e-4);
    // The dense stabilizer and the matrix-free one differ by truncation here.
    EXPECT_NEAR(r.rounds[0].delta_p, squeezing_parameter(st, Target::sp), 2e-2);
    for (int m = 1; m <= 8; ++m) {
        EXPECT_LT(r.rounds[m].delta_p, r.rounds[m - 1].delta_p) << m;
    }
}

TEST(Enumerate, InterleavedBothQuadraturesImprove) {
    auto r = enumerate(vacuum_protocol(Mode::interleaved, 8));
    EXPECT_NEAR(r.total_prob, 1.0, 1e-6);
    EXPECT_LT(r.final_delta_p(), 1.0);
    EXPECT_LT(r.final_delta_q(), 1.0);
    for (int m = 1; m <= 8; ++m) {
        ASSERT_TRUE(r.rounds[m].target.has_value());
        EXPECT_EQ(*r.rounds[m].target, m % 2 ? Target::sp : Target::sq);
    }
    for (int m = 3; m <= 8; ++m) {
        if (*r.rounds[m].target == Target::sp) {
            EXPECT_LT(r.rounds[m].delta_p, r.rounds[m - 2].delta_p) << m;
        } else {
            EXPECT_LT(r.rounds[m].delta_q, r.rounds[m - 2].delta_q) << m;
        }
    }
}

TEST(Enumerate, ZeroNoiseCompositePathMatchesPurePath) {
    auto pure = squeezed_protocol(4, 100);
    pure.edge_tol = 1e-3;
    auto comp = pure;
    // A negligible Kerr term switches to the density-matrix path without changing the physics.
    comp.noise.kerr = 1e-30;
    ASSERT_FALSE(comp.pure_path());
    auto a = enumerate(pure);
    auto b = enumerate(comp);
    for (size_t m = 0; m < a.rounds.size(); ++m) {
        EXPECT_NEAR(a.rounds[m].delta_p, b.rounds[m].delta_p, 1e-6) << m;
        EXPECT_NEAR(a.rounds[m].delta_q, b.rounds[m].delta_q, 1e-6) << m;
        EXPECT_NEAR(a.rounds[m].n_mean, b.rounds[m].n_mean, 1e-6) << m;
    }
}

TEST(Enumerate, KerrDegradesUnmeasuredQuadrature) {
    auto p = squeezed_protocol(4, 100);
    p.edge_tol = 1e-3;
    p.noise.kerr = 2 * M_PI * 2e3;
    p.audit = true;
    auto r = enumerate(p);
    for (int m = 1; m <= 4; ++m) {
        EXPECT_GT(r.rounds[m].delta_q, r.rounds[m - 1].delta_q) << m;
    }
    // Two gates per round on each of the 1 + 2 + 4 + 8 parent branches.
    EXPECT_EQ(r.audit.evolutions, 30);
    EXPECT_LT(r.audit.max_trace_error, 1e-8);
}

TEST(Sampling, AgreesWithEnumerationWithinStatisticalError) {
    // Adaptive branches from vacuum all share one delta, so use fixed phases.
    auto p = vacuum_protocol(Mode::sp_only, 4, 200);
    p.adaptive = false;
    p.n_samples = 2000;
    auto exact = enumerate(p);
    auto sampled = sample_trajectories(p);
    EXPECT_TRUE(sampled.sampled);
    for (int m = 1; m <= 4; ++m) {
        const auto &s = sampled.rounds[m];
        ASSERT_GT(s.se_p, 0.0);
        EXPECT_LT(std::abs(s.delta_p - exact.rounds[m].delta_p), 3 * s.se_p) << m;
    }
}

TEST(Sampling, SeedDeterminism) {
    auto p = vacuum_protocol(Mode::interleaved, 4, 150);
    p.n_samples = 200;
    auto a = sample_trajectories(p);
    auto b = sample_trajectories(p);
    ASSERT_EQ(a.branches.size(), b.branches.size());
    for (size_t k = 0; k < a.branches.size(); ++k) {
        EXPECT_EQ(a.branches[k].record.outcomes, b.branches[k].record.outcomes);
        EXPECT_EQ(a.branches[k].delta_p, b.branches[k].delta_p);
    }
    EXPECT_EQ(a.final_delta_p(), b.final_delta_p());
    p.seed = 2;
    auto c = sample_trajectories(p);
    bool differ = false;
    for (size_t k = 0; k < a.branches.size(); ++k) differ |= a.branches[k].record.outcomes != c.branches[k].record.outcomes;
    EXPECT_TRUE(differ);
}

TEST(Rng, StreamsAreReproducibleAndUniform) {
    SplitMix64 a(7, 3), b(7, 3), c(7, 4);
    EXPECT_EQ(a.next(), b.next());
    EXPECT_NE(a.next(), c.next());
    SplitMix64 u(1, 0);
    double s = 0;
    for (int k = 0; k < 100000; ++k) {
        double x = u.uniform();
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, 1.0);
        s += x;
    }
    EXPECT_NEAR(s / 100000, 0.5, 0.005);
}

TEST(Sense, IntervalBoundary) {
    const double edge = std::sqrt(M_PI / 2);
    EXPECT_THROW(check_sense_interval(0.0, edge), ValidationError);
    EXPECT_THROW(check_sense_interval(edge, 0.0), ValidationError);
    EXPECT_NO_THROW(check_sense_interval(-edge, -edge));
    EXPECT_THROW(check_sense_interval(NAN, 0.0), ValidationError);
}

TEST(Sense, NeedsStoredStates) {
    auto p = vacuum_protocol(Mode::interleaved, 2, 100);
    auto r = enumerate(p);
    EXPECT_THROW(sense(r, 0.1, 0.1, p), ValidationError);
}

namespace {

struct Prepared {
    ProtocolSpec protocol;
    RunResult run;
};

const Prepared &prepared_grid() {
    static const Prepared prep = [] {
        Prepared p;
        p.protocol = vacuum_protocol(Mode::interleaved, 8);
        p.protocol.n_samples = 200;
        RunOptions o;
        o.keep_states = true;
        p.run = sample_trajectories(p.protocol, o);
        return p;
    }();
    return prep;
}

}  // namespace

TEST(Sense, NullDisplacementIsUnbiased) {
    const auto &prep = prepared_grid();
    auto r = sense(prep.run, 0.0, 0.0, prep.protocol);
    EXPECT_EQ(r.branches.size(), prep.run.branches.size());
    EXPECT_LT(std::abs(r.mean_u), 0.05);
    EXPECT_LT(std::abs(r.mean_v), 0.05);
}

TEST(Sense, ShiftCovariance) {
    // theta' - theta moves by exactly sqrt(2 pi) v for every branch when the
    // measurement trajectories are held fixed; estimates differ only by the shift.
    const auto &prep = prepared_grid();
    auto zero = sense(prep.run, 0.0, 0.0, prep.protocol);
    auto moved = sense(prep.run, 0.3, -0.2, prep.protocol);
    EXPECT_NEAR(moved.mean_u - zero.mean_u, 0.3, 0.05);
    EXPECT_NEAR(moved.mean_v - zero.mean_v, -0.2, 0.05);
}

TEST(Sense, RecoveryErrorAtTheGridNoiseFloor) {
    // A finite-Delta grid state fixes each parameter to about Delta / sqrt2 in
    // these units; the recovery error should sit at that floor.
    const auto &prep = prepared_grid();
    auto r = sense(prep.run, 0.3, -0.2, prep.protocol);
    const double floor_u = prep.run.final_delta_q() / std::sqrt(2.0);
    const double floor_v = prep.run.final_delta_p() / std::sqrt(2.0);
    EXPECT_LT(r.rms_u, 1.2 * floor_u);
    EXPECT_LT(r.rms_v, 1.2 * floor_v);
    EXPECT_GT(r.rms_u, 0.4 * floor_u);
    EXPECT_GT(r.rms_v, 0.4 * floor_v);
}

TEST(Sweep, EmptyAndFailingPoints) {
    auto p = vacuum_protocol(Mode::sp_only, 2, 100);
    EXPECT_TRUE(sweep({}, p).empty());
    NoiseParams ok, bad;
    bad.kappa = -5;
    auto rows = sweep({ok, bad, ok}, p);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_TRUE(rows[0].result.has_value());
    EXPECT_FALSE(rows[1].result.has_value());
    EXPECT_FALSE(rows[1].error.empty());
    EXPECT_TRUE(rows[2].result.has_value());
}
