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

#include "gridsense/circuits.hpp"

#include <cmath>

namespace gridsense {

cdouble round_alpha(Target t, int l) {
    const double s = std::sqrt(M_PI) * l;
    return t == Target::sp ? cdouble(s, 0) : cdouble(0, -s);
}

RoundKit::RoundKit(const FockSpace<double> &space, const std::vector<int> &multiplicities)
    : space_(space), stab_(gridsense::stabilizers(space)) {
    for (int l : multiplicities) {
        if (l < 1) {
            throw ValidationError("round multiplicity must be positive");
        }
        for (Target t : {Target::sp, Target::sq}) {
            auto key = std::make_pair(static_cast<int>(t), l);
            if (half_.count(key)) {
                continue;
            }
            MatrixXc up = gridsense::displacement(space_, round_alpha(t, l) / 2.0);
            MatrixXc down = up.adjoint();
            half_.emplace(key, std::make_pair(std::move(up), std::move(down)));
        }
    }
}

const std::pair<MatrixXc, MatrixXc> &RoundKit::lookup(Target t, int l) const {
    auto it = half_.find({static_cast<int>(t), l});
    if (it == half_.end()) {
        throw ValidationError("round multiplicity " + std::to_string(l) + " was not prepared");
    }
    return it->second;
}

const MatrixXc &RoundKit::half(Target t, int l) const { return lookup(t, l).first; }
const MatrixXc &RoundKit::half_inverse(Target t, int l) const { return lookup(t, l).second; }

void MeasurementRecord::push(int x, double phase, Target t, double p) {
    outcomes.push_back(x);
    phases.push_back(phase);
    targets.push_back(t);
    prob *= p;
}

void MeasurementRecord::validate() const {
    if (phases.size() != outcomes.size() || targets.size() != outcomes.size()) {
        throw ValidationError("measurement record lengths disagree");
    }
    if (!(prob >= 0 && prob <= 1)) {
        throw ValidationError("branch probability outside [0, 1]");
    }
    for (int x : outcomes) {
        if (x != 0 && x != 1) {
            throw ValidationError("measurement outcomes must be bits");
        }
    }
}

std::array<CavityBranch, 2> ramsey_round(const RoundKit &kit, const CavityState<double> &state, const RoundSpec &spec) {
    if (!(kit.space() == state.space())) {
        throw DimensionMismatch("round operators and state live in different spaces");
    }
    const MatrixXc &up = kit.half(spec.target, spec.l);
    const MatrixXc &down = kit.half_inverse(spec.target, spec.l);
    const cdouble w = expi(spec.phase);
    std::array<CavityBranch, 2> out{CavityBranch{0, state}, CavityBranch{0, state}};
    if (state.is_pure()) {
        VectorXc a, b;
        if (spec.predisplace) {
            a = down * state.vector();
            b = up * state.vector();
        } else {
            a = state.vector();
            b = up * (up * state.vector());
        }
        for (int x = 0; x < 2; ++x) {
            VectorXc c = 0.5 * (a + (x == 0 ? w : -w) * b);
            double p = c.squaredNorm();
            out[x].prob = p;
            if (p > 0) {
                out[x].state = CavityState<double>::pure(state.space(), c / std::sqrt(p));
            }
        }
        return out;
    }
    MatrixXc b0 = spec.predisplace ? down : kit.space().identity();
    MatrixXc b1 = spec.predisplace ? up : MatrixXc(up * up);
    for (int x = 0; x < 2; ++x) {
        MatrixXc k = 0.5 * (b0 + (x == 0 ? w : -w) * b1);
        MatrixXc r = k * state.density_ref() * k.adjoint();
        double p = r.trace().real();
        out[x].prob = p;
        if (p > 0) {
            r /= p;
            r = (0.5 * (r + r.adjoint())).eval();
            out[x].state = CavityState<double>::mixed(state.space(), std::move(r));
        }
    }
    return out;
}

double adaptive_phase(const RoundKit &kit, const CavityState<double> &reference, Target t) {
    cdouble tr = reference.is_pure() ? stabilizer_trace(reference, t) : expectation(kit.stabilizer(t), reference);
    return wrap_phase(squeezing_from_trace<double>(tr).theta + M_PI / 2);
}

CompositeState controlled_displacement_dispersive(const RoundKit &kit, const CompositeState &state, Target t, int l,
                                                  const GateChannel &gate, bool predisplace, ChannelAudit *audit) {
    auto evolve = [&](const CompositeState &s) {
        CompositeState r = gate.apply(s);
        if (audit) {
            audit->record(s, r);
        }
        return r;
    };
    const cdouble alpha = round_alpha(t, l);
    CompositeState s = evolve(state);
    s = apply_qubit_gate(s, qubit::pauli_x());
    s = apply_cavity_unitary(s, kit.displacement(cdouble(0, -1) * alpha / 2.0));
    s = evolve(s);
    s = apply_qubit_gate(s, qubit::pauli_x());
    if (!predisplace) {
        s = apply_cavity_unitary(s, kit.half(t, l));
    }
    return s;
}

std::array<CompositeBranch, 2> noisy_round(const RoundKit &kit, const CompositeState &state, const RoundSpec &spec,
                                           const GateChannel &gate, ChannelAudit *audit) {
    const NoiseParams &noise = gate.noise();
    CompositeState s = apply_qubit_gate(state, qubit::hadamard());
    s = controlled_displacement_dispersive(kit, s, spec.target, spec.l, gate, spec.predisplace, audit);
    s = apply_qubit_gate(s, qubit::rz(spec.phase));
    s = apply_qubit_gate(s, qubit::hadamard());
    std::array<CompositeBranch, 2> out{CompositeBranch{0, state}, CompositeBranch{0, state}};
    for (int x = 0; x < 2; ++x) {
        CompositeState r = measurement_branch(s, x, noise);
        double p = r.trace();
        out[x].prob = std::max(p, 0.0);
        if (!(p > 0)) {
            continue;
        }
        r = r.normalized();
        r = idle_damping(r, noise.gamma, noise.t_readout);
        if (x == 1) {
            r = apply_qubit_gate(r, qubit::pauli_x());
        }
        out[x].state = std::move(r);
    }
    return out;
}

std::vector<RoundSpec> textbook_schedule(int m, Target t) {
    if (m < 1 || m > 30) {
        throw ValidationError("textbook schedule needs 1 <= M <= 30");
    }
    std::vector<RoundSpec> rounds;
    for (int k = m - 1; k >= 0; --k) {
        RoundSpec r;
        r.target = t;
        r.l = 1 << k;
        r.predisplace = k > 0;
        rounds.push_back(r);
    }
    return rounds;
}

double textbook_phase(const std::vector<int> &bits, int m) {
    const int k = m - 1 - static_cast<int>(bits.size());
    if (k < 0) {
        throw ValidationError("all textbook rounds already measured");
    }
    double acc = 0;
    for (int j = k + 2; j <= m; ++j) {
        acc += bits[m - j] * std::ldexp(1.0, -(j - k));
    }
    return -2 * M_PI * acc;
}

double textbook_fraction(const std::vector<int> &bits) {
    const int m = static_cast<int>(bits.size());
    double acc = 0;
    for (int j = 1; j <= m; ++j) {
        acc += bits[m - j] * std::ldexp(1.0, -j);
    }
    return acc;
}

double textbook_estimate(const std::vector<int> &bits_in, const std::vector<int> &bits_out) {
    return wrap_centered(-(textbook_fraction(bits_out) - textbook_fraction(bits_in)), 1.0);
}

}  // namespace gridsense
