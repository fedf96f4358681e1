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

#include <cmath>

namespace gridsense {

std::string to_string(StateKind kind) {
    switch (kind) {
        case StateKind::vacuum:
            return "vacuum";
        case StateKind::coherent:
            return "coherent";
        case StateKind::squeezed_vacuum:
            return "squeezed";
        case StateKind::number:
            return "number";
        case StateKind::grid:
            return "grid";
        case StateKind::compass:
            return "compass";
    }
    return "unknown";
}

StateKind state_kind_from_string(const std::string &name) {
    for (StateKind k : {StateKind::vacuum, StateKind::coherent, StateKind::squeezed_vacuum, StateKind::number,
                        StateKind::grid, StateKind::compass}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ValidationError("unknown state kind '" + name + "'");
}

double compass_overlap(double alpha, std::complex<double> beta) {
    // <i^j a| D(beta) |i^j a> = exp(-|beta|^2/2) exp(2i Im(beta conj(i^j a))); cross terms vanish for large a.
    double envelope = std::exp(-std::norm(beta) / 2.0);
    return envelope * 0.5 * (std::cos(2.0 * alpha * beta.imag()) + std::cos(2.0 * alpha * beta.real()));
}

}  // namespace gridsense
