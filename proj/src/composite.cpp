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

#include "gridsense/composite.hpp"

#include <Eigen/Eigenvalues>

namespace gridsense {

CompositeState::CompositeState(const FockSpace<double> &space, MatrixXc rho) : space_(space), rho_(std::move(rho)) {
    if (rho_.rows() != 2 * space_.dim() || rho_.cols() != 2 * space_.dim()) {
        throw DimensionMismatch("composite density matrix must be 2*dim square");
    }
    if (!rho_.allFinite()) {
        throw NumericalError("composite density matrix has non-finite entries");
    }
}

CompositeState CompositeState::with_ground_qubit(const CavityState<double> &cavity) {
    const int n = cavity.dim();
    MatrixXc rho = MatrixXc::Zero(2 * n, 2 * n);
    rho.topLeftCorner(n, n) = cavity.density();
    return CompositeState(cavity.space(), std::move(rho));
}

CompositeState CompositeState::normalized() const {
    double t = trace();
    if (!(t > 0)) {
        throw NumericalError("cannot normalize a composite state with zero trace");
    }
    return CompositeState(space_, rho_ / t);
}

MatrixXc CompositeState::cavity_reduced() const { return block(0, 0) + block(1, 1); }

Eigen::Matrix2cd CompositeState::qubit_reduced() const {
    Eigen::Matrix2cd r;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            r(a, b) = block(a, b).trace();
        }
    }
    return r;
}

CavityState<double> CompositeState::cavity_state() const {
    MatrixXc rho = cavity_reduced();
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return CavityState<double>::mixed(space_, std::move(rho));
}

double CompositeState::min_eigenvalue() const {
    MatrixXc h = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void CompositeState::validate(bool check_positivity) const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("composite state is not Hermitian");
    }
    if (std::abs(trace() - 1.0) > 1e-8) {
        throw ValidationError("composite state trace differs from 1");
    }
    if (check_positivity && min_eigenvalue() < -1e-8) {
        throw ValidationError("composite state has a negative eigenvalue");
    }
}

CompositeState apply_qubit_gate(const CompositeState &state, const Qubit2 &u) {
    const int n = state.dim();
    MatrixXc out(2 * n, 2 * n);
    // out_ab = sum_cd u_ac rho_cd conj(u_bd)
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            auto o = out.block(a * n, b * n, n, n);
            o.setZero();
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) {
                    cdouble w = u(a, c) * std::conj(u(b, d));
                    if (w != cdouble(0)) {
                        o += w * state.block(c, d);
                    }
                }
            }
        }
    }
    return CompositeState(state.space(), std::move(out));
}

CompositeState apply_cavity_unitary(const CompositeState &state, const MatrixXc &d) {
    const int n = state.dim();
    if (d.rows() != n || d.cols() != n) {
        throw DimensionMismatch("cavity operator does not match the composite space");
    }
    MatrixXc out(2 * n, 2 * n);
    MatrixXc tmp(n, n);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            tmp.noalias() = d * state.block(a, b);
            out.block(a * n, b * n, n, n).noalias() = tmp * d.adjoint();
        }
    }
    return CompositeState(state.space(), std::move(out));
}

namespace qubit {

Qubit2 hadamard() {
    Qubit2 h;
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

Qubit2 pauli_x() {
    Qubit2 x;
    x << 0, 1, 1, 0;
    return x;
}

Qubit2 rz(double phi) {
    Qubit2 r = Qubit2::Zero();
    r(0, 0) = 1;
    r(1, 1) = expi(phi);
    return r;
}

Qubit2 projector(int x) {
    Qubit2 p = Qubit2::Zero();
    p(x, x) = 1;
    return p;
}

}  // namespace qubit

}  // namespace gridsense
