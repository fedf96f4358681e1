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

#ifndef GRIDSENSE_CIRCUITS_HPP
#define GRIDSENSE_CIRCUITS_HPP

#include <array>
#include <map>
#include <vector>

#include "gridsense/composite.hpp"
#include "gridsense/metrics.hpp"
#include "gridsense/noise.hpp"

namespace gridsense {

// One Ramsey round. The controlled operation is D(-alpha/2) on qubit |0> and
// D(alpha/2) on |1>, with D(alpha) = S^-l for the targeted stabilizer. Without
// the pre-displacement the branches are I and D(alpha).
struct RoundSpec {
    Target target = Target::sp;
    int l = 1;
    double phase = 0;
    bool predisplace = true;
};

cdouble round_alpha(Target t, int l);

// Dense branch displacements for a fixed set of round multiplicities.
class RoundKit {
   public:
    explicit RoundKit(const FockSpace<double> &space, const std::vector<int> &multiplicities = {1});

    const FockSpace<double> &space() const { return space_; }
    const Stabilizers<double> &stabilizers() const { return stab_; }
    const MatrixXc &stabilizer(Target t) const { return t == Target::sp ? stab_.sp : stab_.sq; }
    // D(alpha/2) and D(-alpha/2).
    const MatrixXc &half(Target t, int l) const;
    const MatrixXc &half_inverse(Target t, int l) const;
    // D(beta) for arbitrary beta, not cached.
    MatrixXc displacement(cdouble beta) const { return gridsense::displacement(space_, beta); }

   private:
    FockSpace<double> space_;
    Stabilizers<double> stab_;
    std::map<std::pair<int, int>, std::pair<MatrixXc, MatrixXc>> half_;
    const std::pair<MatrixXc, MatrixXc> &lookup(Target t, int l) const;
};

template <typename State>
struct Branch {
    double prob = 0;
    State state;
};

using CavityBranch = Branch<CavityState<double>>;
using CompositeBranch = Branch<CompositeState>;

struct MeasurementRecord {
    std::vector<int> outcomes;
    std::vector<double> phases;
    std::vector<Target> targets;
    double prob = 1;

    std::size_t size() const { return outcomes.size(); }
    void push(int x, double phase, Target t, double p);
    // Throws ValidationError when lengths disagree or prob leaves [0, 1].
    void validate() const;
};

// Exact noiseless round; index x of the result is outcome x. A branch with
// zero probability carries the unchanged input.
std::array<CavityBranch, 2> ramsey_round(const RoundKit &kit, const CavityState<double> &state, const RoundSpec &spec);

// Feedback phase that makes both outcomes equally likely for the reference.
// Throws UndefinedPhaseError when |Tr S rho| is below the phase threshold.
double adaptive_phase(const RoundKit &kit, const CavityState<double> &reference, Target t);

// R, X, D(-i alpha/2), R, X on qubit (x) cavity, with R the noisy dispersive gate.
CompositeState controlled_displacement_dispersive(const RoundKit &kit, const CompositeState &state, Target t, int l,
                                                  const GateChannel &gate, bool predisplace = true,
                                                  ChannelAudit *audit = nullptr);

// Full noisy round: H, controlled displacement, Rz(phi), H, measurement with
// readout and projection errors, idle qubit decay, reset on outcome 1.
std::array<CompositeBranch, 2> noisy_round(const RoundKit &kit, const CompositeState &state, const RoundSpec &spec,
                                           const GateChannel &gate, ChannelAudit *audit = nullptr);

// Iterative phase estimation: l = 2^k for k = M-1 down to 0, the last round
// without pre-displacement.
std::vector<RoundSpec> textbook_schedule(int m, Target t);

// Feedback phase for the round after `bits`, given in measurement order.
double textbook_phase(const std::vector<int> &bits, int m);

// Mesh value v/sqrt(2 pi) in [-1/2, 1/2) recovered from the bits of the two
// estimation runs.
double textbook_estimate(const std::vector<int> &bits_in, const std::vector<int> &bits_out);

// 0.x_1 x_2 ... x_M from bits in measurement order (x_M first).
double textbook_fraction(const std::vector<int> &bits);

}  // namespace gridsense

#endif
