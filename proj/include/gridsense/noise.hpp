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

#ifndef GRIDSENSE_NOISE_HPP
#define GRIDSENSE_NOISE_HPP

#include <vector>

#include "gridsense/composite.hpp"

namespace gridsense {

struct NoiseParams {
    double chi = 2.0 * M_PI * 2.4e6;
    double kerr = 0;
    double kerr_cq = 0;
    double kappa = 0;
    double gamma = 0;
    double p_readout = 0;
    double p_projection = 0;
    double t_readout = 150e-9;

    double t_gate() const;
    bool coherent_errors() const { return kerr != 0 || kerr_cq != 0; }
    bool stochastic() const { return kappa != 0 || gamma != 0; }
    bool measurement_errors() const { return p_readout != 0 || p_projection != 0; }
    bool noiseless() const { return !coherent_errors() && !stochastic() && !measurement_errors(); }
    void validate() const;
};

// Which diagonal terms enter H: dispersive -chi Z n, Kerr -(Kc/2) n(n-1),
// nonlinear dispersive -(Kcq/2) n(n-1) Z, with Z = +1 on qubit |0>.
struct HamiltonianSpec {
    bool dispersive = true;
    bool kerr = true;
    bool nonlinear = true;

    static HamiltonianSpec from(const NoiseParams &noise);
};

Eigen::VectorXd diagonal_energies(int dim, const HamiltonianSpec &h, const NoiseParams &noise);
MatrixXc hamiltonian_matrix(int dim, const HamiltonianSpec &h, const NoiseParams &noise);

struct LindbladOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    long max_steps = 2000000;
};

struct IntegratorStats {
    long accepted = 0;
    long rejected = 0;
};

// Adaptive Dormand-Prince 5(4) in the interaction picture of the diagonal
// non-Hermitian part.
CompositeState lindblad_evolve(const CompositeState &state, const HamiltonianSpec &h, const NoiseParams &noise,
                               double duration, const LindbladOptions &opts = {}, IntegratorStats *stats = nullptr);

// Exact propagator on the invariant coherence lines (fixed Fock offset n - m).
class LinePropagator {
   public:
    LinePropagator(int dim, const HamiltonianSpec &h, const NoiseParams &noise, double duration);
    CompositeState apply(const CompositeState &state) const;
    int dim() const { return dim_; }

   private:
    struct Line {
        std::vector<int> rows;
        std::vector<int> cols;
        MatrixXc prop;
        Eigen::VectorXcd diag;
        bool diagonal = false;
    };
    int dim_;
    std::vector<Line> lines_;
};

enum class Integrator { exact, rk45 };

// The noisy R(-Z pi/2) gate: Lindblad evolution for t_gate.
class GateChannel {
   public:
    GateChannel(int dim, const NoiseParams &noise, Integrator integrator, const LindbladOptions &opts = {});
    CompositeState apply(const CompositeState &state) const;
    const NoiseParams &noise() const { return noise_; }

   private:
    NoiseParams noise_;
    HamiltonianSpec h_;
    Integrator integrator_;
    LindbladOptions opts_;
    std::shared_ptr<const LinePropagator> exact_;
    Eigen::VectorXcd phases_;
    bool unitary_diag_ = false;
};

CompositeState idle_damping(const CompositeState &state, double gamma, double t);

struct Readout {
    int reported;
    CompositeState state;
};

// (1 - p) P_x rho P_x + p P_xbar rho P_xbar, unnormalized.
Readout readout_error(const CompositeState &state, int x, double p);

// A_x rho A_x^dagger with A_x = sqrt(1 - p) P_x + sqrt(p) P_xbar, unnormalized.
CompositeState imperfect_projection(const CompositeState &state, int x, double p);

// Reported-outcome branch combining both error models.
CompositeState measurement_branch(const CompositeState &state, int x, const NoiseParams &noise);

// Kraus operators of the combined measurement for outcome x.
std::vector<Qubit2> measurement_kraus(int x, const NoiseParams &noise);

struct ChannelAudit {
    double max_trace_error = 0;
    double min_eigenvalue = 0;
    double max_hermiticity_error = 0;
    long evolutions = 0;

    void record(const CompositeState &before, const CompositeState &after);
    void merge(const ChannelAudit &other);
};

}  // namespace gridsense

#endif
