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

#ifndef GRIDSENSE_COMPOSITE_HPP
#define GRIDSENSE_COMPOSITE_HPP

#include <array>

#include "gridsense/fock.hpp"

namespace gridsense {

using Qubit2 = Eigen::Matrix2cd;

// Qubit (x) cavity density matrix, qubit factor first: index = q * dim + n.
class CompositeState {
   public:
    CompositeState(const FockSpace<double> &space, MatrixXc rho);

    // |0><0| (x) rho_cavity.
    static CompositeState with_ground_qubit(const CavityState<double> &cavity);

    const FockSpace<double> &space() const { return space_; }
    int dim() const { return space_.dim(); }
    const MatrixXc &matrix() const { return rho_; }
    MatrixXc &matrix() { return rho_; }

    auto block(int a, int b) { return rho_.block(a * dim(), b * dim(), dim(), dim()); }
    auto block(int a, int b) const { return rho_.block(a * dim(), b * dim(), dim(), dim()); }

    double trace() const { return rho_.trace().real(); }
    CompositeState normalized() const;
    MatrixXc cavity_reduced() const;
    Eigen::Matrix2cd qubit_reduced() const;
    CavityState<double> cavity_state() const;

    // Throws ValidationError when the Hermiticity, trace or positivity bounds fail.
    void validate(bool check_positivity = true) const;
    double min_eigenvalue() const;

   private:
    FockSpace<double> space_;
    MatrixXc rho_;
};

CompositeState apply_qubit_gate(const CompositeState &state, const Qubit2 &u);
CompositeState apply_cavity_unitary(const CompositeState &state, const MatrixXc &d);

namespace qubit {
Qubit2 hadamard();
Qubit2 pauli_x();
Qubit2 rz(double phi);
Qubit2 projector(int x);
}  // namespace qubit

}  // namespace gridsense

#endif
