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

#ifndef GRIDSENSE_EXPERIMENTS_HPP
#define GRIDSENSE_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridsense/circuits.hpp"
#include "gridsense/noise.hpp"

namespace gridsense {

// rounds counts combined rounds; interleaved starts with S_p, sp_then_sq runs
// the first ceil(M/2) rounds on S_p.
enum class Mode { sp_only, sq_only, interleaved, sp_then_sq };

std::string to_string(Mode m);
Mode mode_from_string(const std::string &name);

struct ProtocolSpec {
    Mode mode = Mode::sp_only;
    int rounds = 8;
    StateSpec initial{};
    bool adaptive = true;
    NoiseParams noise{};
    std::uint64_t seed = 1;
    int n_samples = 2000;
    int dim = 400;
    double edge_tol = 1e-10;
    Integrator integrator = Integrator::rk45;
    bool audit = false;
    double prune = 1e-12;

    std::vector<Target> targets() const;
    // Pure-state path applies when the noise model is empty.
    bool pure_path() const { return noise.noiseless(); }
    void validate() const;
    // Branch-tree limits: M <= 16 noiseless, 12 with coherent errors only, 8 otherwise.
    int max_enumerated_rounds() const;
};

struct RoundStats {
    int round = 0;
    std::optional<Target> target;
    double delta_p = 0;
    double delta_q = 0;
    double se_p = 0;
    double se_q = 0;
    double n_mean = 0;
    double mass = 0;
};

struct BranchRecord {
    MeasurementRecord record;
    double weight = 0;
    double delta_p = 0;
    double delta_q = 0;
    double theta_p = 0;
    double theta_q = 0;
    double n_mean = 0;
};

struct RunResult {
    std::vector<RoundStats> rounds;
    std::vector<BranchRecord> branches;
    double total_prob = 0;
    double dropped = 0;
    bool sampled = false;
    ChannelAudit audit;
    std::optional<CavityState<double>> most_probable;
    // Final physical cavity states aligned with branches, when requested.
    std::vector<CavityState<double>> final_states;
    std::vector<Target> targets;

    double final_delta_p() const { return rounds.back().delta_p; }
    double final_delta_q() const { return rounds.back().delta_q; }
    double final_n_mean() const { return rounds.back().n_mean; }
};

struct RunOptions {
    bool keep_states = false;
    bool keep_most_probable = true;
};

RunResult enumerate(const ProtocolSpec &protocol, const RunOptions &opts = {});
RunResult sample_trajectories(const ProtocolSpec &protocol, const RunOptions &opts = {});

// Counter-based generator: stream (seed, index) is independent of run order.
class SplitMix64 {
   public:
    SplitMix64(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next();
    double uniform();

   private:
    std::uint64_t state_;
};

struct SenseBranch {
    double weight = 0;
    double u_est = 0;
    double v_est = 0;
};

struct SenseResult {
    double u = 0;
    double v = 0;
    std::vector<SenseBranch> branches;
    double mean_u = 0;
    double mean_v = 0;
    double rms_u = 0;
    double rms_v = 0;

    double fraction_within(double tol_u, double tol_v) const;
};

struct SenseOptions {
    // Measurement trajectories per prepared branch; 0 enumerates the tree.
    int samples_per_branch = 1;
};

// Applies exp(-iu p + iv q) to every prepared branch, reruns the measurement
// protocol and compares the stabilizer phases before and after.
SenseResult sense(const RunResult &prepared, double u, double v, const ProtocolSpec &protocol,
                  const SenseOptions &opts = {});

void check_sense_interval(double u, double v);

struct SweepRow {
    NoiseParams noise;
    std::optional<RunResult> result;
    std::string error;
};

// One run per grid point; failures are recorded in the row and the sweep continues.
std::vector<SweepRow> sweep(const std::vector<NoiseParams> &grid, const ProtocolSpec &tmpl, bool sample = false);

}  // namespace gridsense

#endif
