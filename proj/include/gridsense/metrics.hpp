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

#ifndef GRIDSENSE_METRICS_HPP
#define GRIDSENSE_METRICS_HPP

#include <cmath>
#include <vector>

#include "gridsense/errors.hpp"
#include "gridsense/fock.hpp"

namespace gridsense {

enum class Target { sp, sq };

inline const char *to_string(Target t) { return t == Target::sp ? "S_p" : "S_q"; }

template <typename Real>
Complex<Real> stabilizer_amplitude(Target t) {
    return t == Target::sp ? sp_amplitude<Real>() : sq_amplitude<Real>();
}

inline constexpr double kPhaseThreshold = 1e-12;

// Delta = sqrt(ln(1/|T|^2) / pi) for |T| = |Tr S rho|.
template <typename Real>
Real squeezing_from_modulus(const Real &modulus) {
    using std::log;
    using std::sqrt;
    if (!(modulus > Real(0))) {
        return std::numeric_limits<Real>::infinity();
    }
    Real v = -Real(2) * log(modulus) / pi_v<Real>();
    return v > Real(0) ? sqrt(v) : Real(0);
}

// Tr(S rho) without a dense stabilizer matrix; pure states only.
template <typename Real>
Complex<Real> stabilizer_trace(const CavityState<Real> &state, Target t) {
    if (!state.is_pure()) {
        CMatrix<Real> s = displacement(state.space(), stabilizer_amplitude<Real>(t));
        return expectation(s, state);
    }
    const auto &v = state.vector();
    return v.dot(apply_displacement<Real>(stabilizer_amplitude<Real>(t), v));
}

template <typename Real = double>
struct SqueezingValue {
    Real delta;
    Real theta;
};

template <typename Real>
SqueezingValue<Real> squeezing_from_trace(const Complex<Real> &trace) {
    using std::abs;
    using std::arg;
    Real m = abs(trace);
    if (m < Real(kPhaseThreshold)) {
        throw UndefinedPhaseError("|Tr S rho| is below the phase threshold");
    }
    return {squeezing_from_modulus(m), arg(trace)};
}

template <typename Real>
SqueezingValue<Real> effective_squeezing(const CavityState<Real> &state, const CMatrix<Real> &s) {
    return squeezing_from_trace<Real>(expectation(s, state));
}

// Delta alone stays meaningful below the phase threshold.
template <typename Real>
Real squeezing_parameter(const CavityState<Real> &state, Target t) {
    using std::abs;
    return squeezing_from_modulus<Real>(abs(stabilizer_trace(state, t)));
}

struct SqueezingReport {
    double delta_p = 0;
    double delta_q = 0;
    double theta_p = 0;
    double theta_q = 0;
    double n_mean = 0;
};

SqueezingReport squeezing_report(const CavityState<double> &state, const Stabilizers<double> &stab);

struct WrappedStats {
    double mu = 0;
    double sigma = 0;
    double holevo = 0;
};

WrappedStats wrapped_gaussian_stats(const std::vector<double> &theta, const std::vector<double> &prob);

struct FisherMatrix {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    double pp() const { return m(0, 0); }
    double qq() const { return m(1, 1); }
    double qp() const { return m(0, 1); }
};

FisherMatrix fisher_matrix(const CavityState<double> &psi);
double cramer_rao_sum(const FisherMatrix &f);

struct Moments {
    double mean_q = 0;
    double mean_p = 0;
    double var_q = 0;
    double var_p = 0;
    // <(pq + qp)/2>
    double sym_pq = 0;
};

Moments quadrature_moments(const CavityState<double> &psi);

struct Mesh {
    std::vector<double> q;
    std::vector<double> p;
    static Mesh uniform(double lo, double hi, int points);
};

// W(q_i, p_j) stored at (i, j); normalized so that it integrates to 1 over dq dp.
Eigen::MatrixXd wigner(const CavityState<double> &state, const Mesh &mesh);

// Translation period of W along one axis, from the autocorrelation maximum.
double wigner_period(const Eigen::MatrixXd &w, const Mesh &mesh, Axis axis);

double von_neumann_entropy(const MatrixXc &rho, double base = 2.0);

// rho = int_S dbeta D(beta)|psi><psi|D(-beta), S the square |Re|,|Im| < sqrt(pi)/2
// with measure (1/pi) d^2 beta, midpoint rule on l x l cells.
MatrixXc displaced_mixture(const CavityState<double> &psi, int l);

}  // namespace gridsense

#endif
