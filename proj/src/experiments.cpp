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

#include <cmath>
#include <functional>

namespace gridsense {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::sp_only:
            return "sp_only";
        case Mode::sq_only:
            return "sq_only";
        case Mode::interleaved:
            return "interleaved";
        case Mode::sp_then_sq:
            return "sp_then_sq";
    }
    return "unknown";
}

Mode mode_from_string(const std::string &name) {
    for (Mode m : {Mode::sp_only, Mode::sq_only, Mode::interleaved, Mode::sp_then_sq}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw ValidationError("unknown protocol mode '" + name + "'");
}

std::vector<Target> ProtocolSpec::targets() const {
    std::vector<Target> t(std::max(rounds, 0));
    for (int r = 0; r < rounds; ++r) {
        switch (mode) {
            case Mode::sp_only:
                t[r] = Target::sp;
                break;
            case Mode::sq_only:
                t[r] = Target::sq;
                break;
            case Mode::interleaved:
                t[r] = r % 2 == 0 ? Target::sp : Target::sq;
                break;
            case Mode::sp_then_sq:
                t[r] = r < (rounds + 1) / 2 ? Target::sp : Target::sq;
                break;
        }
    }
    return t;
}

int ProtocolSpec::max_enumerated_rounds() const {
    if (noise.noiseless()) {
        return 16;
    }
    if (!noise.stochastic() && !noise.measurement_errors()) {
        return 12;
    }
    return 8;
}

void ProtocolSpec::validate() const {
    if (rounds < 1) {
        throw ValidationError("protocol needs at least one round");
    }
    if (rounds > 64) {
        throw ResourceLimitError("more than 64 rounds requested");
    }
    if (dim < 2) {
        throw ValidationError("Fock dimension must be at least 2");
    }
    if (!(edge_tol > 0)) {
        throw ValidationError("edge tolerance must be positive");
    }
    if (!(prune >= 0 && prune < 1e-3)) {
        throw ValidationError("pruning threshold must lie in [0, 1e-3)");
    }
    noise.validate();
}

namespace {

struct Node {
    CavityState<double> ref;
    std::optional<CompositeState> phys;
    cdouble ref_tp, ref_tq;
    cdouble tp, tq;
    double n_mean = 0;
};

struct Child {
    double prob = 0;
    std::optional<Node> node;
};

cdouble trace_with(const MatrixXc &s, const MatrixXc &rho) { return s.cwiseProduct(rho.transpose()).sum(); }

double theta_or_zero(cdouble t) { return std::abs(t) < kPhaseThreshold ? 0.0 : std::arg(t); }

class Engine {
   public:
    explicit Engine(const ProtocolSpec &p) : spec_(p), space_(p.dim), kit_(space_), targets_(p.targets()) {
        spec_.validate();
        if (!spec_.pure_path()) {
            gate_.emplace(p.dim, p.noise, p.integrator);
        }
        std::array<int, 2> count{0, 0};
        own_index_.resize(targets_.size());
        for (std::size_t r = 0; r < targets_.size(); ++r) {
            own_index_[r] = count[static_cast<int>(targets_[r])]++;
        }
        own_total_ = count;
    }

    const FockSpace<double> &space() const { return space_; }
    const std::vector<Target> &targets() const { return targets_; }
    ChannelAudit &audit() { return audit_; }

    Node make_node(CavityState<double> ref, std::optional<CompositeState> phys) const {
        Node n{std::move(ref), std::move(phys), {}, {}, {}, {}, 0};
        if (n.ref.is_pure()) {
            const auto &v = n.ref.vector();
            n.ref_tp = v.dot(kit_.stabilizer(Target::sp) * v);
            n.ref_tq = v.dot(kit_.stabilizer(Target::sq) * v);
        } else {
            n.ref_tp = trace_with(kit_.stabilizer(Target::sp), n.ref.density_ref());
            n.ref_tq = trace_with(kit_.stabilizer(Target::sq), n.ref.density_ref());
        }
        if (n.phys) {
            MatrixXc rc = n.phys->cavity_reduced();
            n.tp = trace_with(kit_.stabilizer(Target::sp), rc);
            n.tq = trace_with(kit_.stabilizer(Target::sq), rc);
            double s = 0;
            for (Eigen::Index k = 0; k < rc.rows(); ++k) {
                s += k * rc(k, k).real();
            }
            n.n_mean = s;
        } else {
            n.tp = n.ref_tp;
            n.tq = n.ref_tq;
            n.n_mean = mean_photon_number(n.ref);
        }
        return n;
    }

    Node initial() const {
        CavityState<double> psi = make_state(space_, spec_.initial, spec_.edge_tol);
        return start_from(psi);
    }

    Node start_from(const CavityState<double> &psi) const {
        if (psi.dim() != space_.dim()) {
            throw DimensionMismatch("state dimension differs from the protocol dimension");
        }
        std::optional<CompositeState> phys;
        if (!spec_.pure_path()) {
            phys = CompositeState::with_ground_qubit(psi);
        }
        return make_node(psi, std::move(phys));
    }

    double phase_for(const Node &node, int r) const {
        const Target t = targets_[r];
        if (spec_.adaptive) {
            cdouble tr = t == Target::sp ? node.ref_tp : node.ref_tq;
            double theta;
            try {
                theta = squeezing_from_trace<double>(tr).theta;
            } catch (const UndefinedPhaseError &) {
                theta = 0;
            }
            return wrap_phase(theta + M_PI / 2);
        }
        return 2 * own_index_[r] < own_total_[static_cast<int>(t)] ? 0.0 : M_PI / 2;
    }

    std::array<Child, 2> step(const Node &node, int r, double phase) {
        RoundSpec rs;
        rs.target = targets_[r];
        rs.phase = phase;
        auto rb = ramsey_round(kit_, node.ref, rs);
        std::array<Child, 2> out;
        if (!node.phys) {
            for (int x = 0; x < 2; ++x) {
                out[x].prob = rb[x].prob;
                if (rb[x].prob > 0) {
                    out[x].node = make_node(std::move(rb[x].state), std::nullopt);
                } else {
                    out[x].node = node;
                }
            }
            return out;
        }
        auto pb = noisy_round(kit_, *node.phys, rs, *gate_, spec_.audit ? &audit_ : nullptr);
        for (int x = 0; x < 2; ++x) {
            out[x].prob = pb[x].prob;
            if (pb[x].prob > 0) {
                CavityState<double> ref = rb[x].prob > 1e-14 ? std::move(rb[x].state) : node.ref;
                out[x].node = make_node(std::move(ref), std::move(pb[x].state));
            } else {
                out[x].node = node;
            }
        }
        return out;
    }

   private:
    ProtocolSpec spec_;
    FockSpace<double> space_;
    RoundKit kit_;
    std::vector<Target> targets_;
    std::optional<GateChannel> gate_;
    ChannelAudit audit_;
    std::vector<int> own_index_;
    std::array<int, 2> own_total_{0, 0};
};

CavityState<double> physical_state(const Node &n) { return n.phys ? n.phys->cavity_state() : n.ref; }

BranchRecord leaf_record(const Node &n, const MeasurementRecord &rec) {
    BranchRecord b;
    b.record = rec;
    b.delta_p = squeezing_from_modulus(std::abs(n.tp));
    b.delta_q = squeezing_from_modulus(std::abs(n.tq));
    b.theta_p = theta_or_zero(n.tp);
    b.theta_q = theta_or_zero(n.tq);
    b.n_mean = n.n_mean;
    return b;
}

struct Accumulator {
    std::vector<double> mass, dp, dq, dp2, dq2, nm;
    explicit Accumulator(int m) : mass(m + 1), dp(m + 1), dq(m + 1), dp2(m + 1), dq2(m + 1), nm(m + 1) {}
    void add(int r, double w, const Node &n) {
        double a = squeezing_from_modulus(std::abs(n.tp));
        double b = squeezing_from_modulus(std::abs(n.tq));
        mass[r] += w;
        dp[r] += w * a;
        dq[r] += w * b;
        dp2[r] += w * a * a;
        dq2[r] += w * b * b;
        nm[r] += w * n.n_mean;
    }
    std::vector<RoundStats> finish(const std::vector<Target> &targets, std::optional<int> samples) const {
        std::vector<RoundStats> out;
        for (std::size_t r = 0; r < mass.size(); ++r) {
            RoundStats s;
            s.round = static_cast<int>(r);
            if (r > 0) {
                s.target = targets[r - 1];
            }
            s.mass = mass[r];
            if (mass[r] > 0) {
                s.delta_p = dp[r] / mass[r];
                s.delta_q = dq[r] / mass[r];
                s.n_mean = nm[r] / mass[r];
                if (samples && *samples > 1) {
                    const double n = *samples;
                    double vp = std::max(0.0, dp2[r] / mass[r] - s.delta_p * s.delta_p) * n / (n - 1);
                    double vq = std::max(0.0, dq2[r] / mass[r] - s.delta_q * s.delta_q) * n / (n - 1);
                    s.se_p = std::sqrt(vp / n);
                    s.se_q = std::sqrt(vq / n);
                }
            }
            out.push_back(s);
        }
        return out;
    }
};

void check_enumerable(const ProtocolSpec &p, int rounds) {
    if (rounds > p.max_enumerated_rounds()) {
        throw ResourceLimitError("enumeration of " + std::to_string(rounds) + " rounds exceeds the limit of " +
                                 std::to_string(p.max_enumerated_rounds()) + " for this noise model");
    }
}

// Depth-first walk of the full outcome tree below `root`.
void walk(Engine &eng, const Node &root, int rounds, double prune, double base,
          const std::function<void(int, double, const Node &)> &visit,
          const std::function<void(const Node &, const MeasurementRecord &)> &leaf, double &dropped) {
    std::function<void(const Node &, int, const MeasurementRecord &)> rec = [&](const Node &n, int depth,
                                                                                 const MeasurementRecord &mr) {
        visit(depth, base * mr.prob, n);
        if (depth == rounds) {
            leaf(n, mr);
            return;
        }
        const double phase = eng.phase_for(n, depth);
        auto kids = eng.step(n, depth, phase);
        for (int x = 0; x < 2; ++x) {
            const double p = mr.prob * kids[x].prob;
            if (!(base * p >= prune) || kids[x].prob <= 0) {
                dropped += base * p;
                continue;
            }
            MeasurementRecord next = mr;
            next.push(x, phase, eng.targets()[depth], kids[x].prob);
            rec(*kids[x].node, depth + 1, next);
        }
    };
    rec(root, 0, MeasurementRecord{});
}

// One trajectory below `root`; returns the leaf.
Node trajectory(Engine &eng, Node node, int rounds, SplitMix64 &rng, MeasurementRecord &mr,
                const std::function<void(int, const Node &)> &visit) {
    visit(0, node);
    for (int r = 0; r < rounds; ++r) {
        const double phase = eng.phase_for(node, r);
        auto kids = eng.step(node, r, phase);
        const double total = kids[0].prob + kids[1].prob;
        if (!(total > 0)) {
            throw NumericalError("both outcomes have zero probability");
        }
        const int x = rng.uniform() * total < kids[0].prob ? 0 : 1;
        mr.push(x, phase, eng.targets()[r], kids[x].prob / total);
        node = std::move(*kids[x].node);
        visit(r + 1, node);
    }
    return node;
}

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream) : state_(seed) {
    state_ ^= (stream + 1) * 0xD1B54A32D192ED03ULL;
    next();
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return (next() >> 11) * 0x1.0p-53; }

RunResult enumerate(const ProtocolSpec &protocol, const RunOptions &opts) {
    protocol.validate();
    check_enumerable(protocol, protocol.rounds);
    Engine eng(protocol);
    RunResult res;
    res.targets = eng.targets();
    Accumulator acc(protocol.rounds);
    double best = -1;
    std::vector<Node> kept;
    walk(
        eng, eng.initial(), protocol.rounds, protocol.prune, 1.0,
        [&](int depth, double w, const Node &n) { acc.add(depth, w, n); },
        [&](const Node &n, const MeasurementRecord &mr) {
            res.branches.push_back(leaf_record(n, mr));
            res.total_prob += mr.prob;
            if (opts.keep_states) {
                res.final_states.push_back(physical_state(n));
            }
            if (opts.keep_most_probable && mr.prob > best) {
                best = mr.prob;
                res.most_probable = physical_state(n);
            }
        },
        res.dropped);
    for (auto &b : res.branches) {
        b.weight = b.record.prob / res.total_prob;
    }
    res.rounds = acc.finish(res.targets, std::nullopt);
    res.audit = eng.audit();
    return res;
}

RunResult sample_trajectories(const ProtocolSpec &protocol, const RunOptions &opts) {
    protocol.validate();
    if (protocol.n_samples < 1) {
        throw ValidationError("sampling needs n_samples >= 1");
    }
    Engine eng(protocol);
    RunResult res;
    res.sampled = true;
    res.targets = eng.targets();
    Accumulator acc(protocol.rounds);
    const Node start = eng.initial();
    const double w = 1.0 / protocol.n_samples;
    double best = -1;
    for (int i = 0; i < protocol.n_samples; ++i) {
        SplitMix64 rng(protocol.seed, static_cast<std::uint64_t>(i));
        MeasurementRecord mr;
        Node leaf = trajectory(eng, start, protocol.rounds, rng, mr,
                               [&](int depth, const Node &n) { acc.add(depth, w, n); });
        BranchRecord b = leaf_record(leaf, mr);
        b.weight = w;
        res.branches.push_back(std::move(b));
        if (opts.keep_states) {
            res.final_states.push_back(physical_state(leaf));
        }
        if (opts.keep_most_probable && mr.prob > best) {
            best = mr.prob;
            res.most_probable = physical_state(leaf);
        }
    }
    res.total_prob = 1.0;
    res.rounds = acc.finish(res.targets, protocol.n_samples);
    res.audit = eng.audit();
    return res;
}

void check_sense_interval(double u, double v) {
    const double edge = std::sqrt(M_PI / 2);
    for (double x : {u, v}) {
        if (!std::isfinite(x) || x < -edge || x >= edge) {
            throw ValidationError("displacement parameters must lie in [-sqrt(pi/2), sqrt(pi/2))");
        }
    }
}

double SenseResult::fraction_within(double tol_u, double tol_v) const {
    double f = 0, total = 0;
    for (const auto &b : branches) {
        total += b.weight;
        if (std::abs(b.u_est - u) <= tol_u && std::abs(b.v_est - v) <= tol_v) {
            f += b.weight;
        }
    }
    return total > 0 ? f / total : 0;
}

SenseResult sense(const RunResult &prepared, double u, double v, const ProtocolSpec &protocol,
                  const SenseOptions &opts) {
    check_sense_interval(u, v);
    protocol.validate();
    if (prepared.final_states.size() != prepared.branches.size() || prepared.branches.empty()) {
        throw ValidationError("sensing needs a prepared run with stored final states");
    }
    if (opts.samples_per_branch < 0) {
        throw ValidationError("samples_per_branch must be non-negative");
    }
    if (opts.samples_per_branch == 0) {
        check_enumerable(protocol, protocol.rounds);
    }
    Engine eng(protocol);
    const MatrixXc d = displacement(eng.space(), cdouble(u, v) / std::sqrt(2.0));
    int flips_p = 0, flips_q = 0;
    for (Target t : eng.targets()) {
        (t == Target::sq ? flips_p : flips_q) += 1;
    }
    const double root = std::sqrt(2 * M_PI);
    SenseResult out;
    out.u = u;
    out.v = v;
    auto estimate = [&](double w, const BranchRecord &before, const Node &after) {
        SenseBranch sb;
        sb.weight = w;
        sb.v_est = wrap_phase(theta_or_zero(after.tp) - before.theta_p - M_PI * flips_p) / root;
        sb.u_est = wrap_phase(theta_or_zero(after.tq) - before.theta_q - M_PI * flips_q) / root;
        out.branches.push_back(sb);
    };
    for (std::size_t b = 0; b < prepared.branches.size(); ++b) {
        const auto &st = prepared.final_states[b];
        if (st.dim() != protocol.dim) {
            throw DimensionMismatch("prepared states and measurement protocol use different dimensions");
        }
        CavityState<double> shifted = st.is_pure()
                                          ? CavityState<double>::pure(eng.space(), d * st.vector())
                                          : CavityState<double>::mixed(eng.space(), d * st.density_ref() * d.adjoint());
        const Node root_node = eng.start_from(shifted);
        const double wb = prepared.branches[b].weight;
        if (opts.samples_per_branch == 0) {
            double dropped = 0;
            walk(
                eng, root_node, protocol.rounds, protocol.prune, wb, [](int, double, const Node &) {},
                [&](const Node &n, const MeasurementRecord &mr) { estimate(wb * mr.prob, prepared.branches[b], n); },
                dropped);
        } else {
            for (int s = 0; s < opts.samples_per_branch; ++s) {
                SplitMix64 rng(protocol.seed ^ 0x5E45E5E45E45ULL,
                               static_cast<std::uint64_t>(b) * opts.samples_per_branch + s);
                MeasurementRecord mr;
                Node leaf = trajectory(eng, root_node, protocol.rounds, rng, mr, [](int, const Node &) {});
                estimate(wb / opts.samples_per_branch, prepared.branches[b], leaf);
            }
        }
    }
    double total = 0;
    for (const auto &sb : out.branches) {
        total += sb.weight;
        out.mean_u += sb.weight * sb.u_est;
        out.mean_v += sb.weight * sb.v_est;
        out.rms_u += sb.weight * (sb.u_est - u) * (sb.u_est - u);
        out.rms_v += sb.weight * (sb.v_est - v) * (sb.v_est - v);
    }
    out.mean_u /= total;
    out.mean_v /= total;
    out.rms_u = std::sqrt(out.rms_u / total);
    out.rms_v = std::sqrt(out.rms_v / total);
    return out;
}

std::vector<SweepRow> sweep(const std::vector<NoiseParams> &grid, const ProtocolSpec &tmpl, bool sample) {
    std::vector<SweepRow> rows;
    for (const auto &g : grid) {
        SweepRow row;
        row.noise = g;
        try {
            ProtocolSpec p = tmpl;
            p.noise = g;
            row.result = sample ? sample_trajectories(p) : enumerate(p);
        } catch (const Error &e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace gridsense
