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

#ifndef GRIDSENSE_EXPM_HPP
#define GRIDSENSE_EXPM_HPP

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "gridsense/scalar.hpp"

namespace gridsense {

namespace detail {

template <typename Real>
Real one_norm(const CMatrix<Real> &m) {
    using std::abs;
    Real best(0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Real s(0);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            s += abs(m(i, j));
        }
        if (s > best) {
            best = s;
        }
    }
    return best;
}

// Scaling and squaring with a Taylor core; works for any scalar type.
template <typename Real>
CMatrix<Real> expm_taylor(const CMatrix<Real> &g) {
    using std::ceil;
    using std::log2;
    const Eigen::Index n = g.rows();
    Real norm = one_norm<Real>(g);
    int squarings = 0;
    if (norm > Real(0.5)) {
        squarings = static_cast<int>(ceil(log2(static_cast<double>(norm) / 0.5)));
    }
    CMatrix<Real> a = g / Real(std::ldexp(1.0, squarings));
    CMatrix<Real> result = CMatrix<Real>::Identity(n, n);
    CMatrix<Real> term = CMatrix<Real>::Identity(n, n);
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int k = 1; k < 60; ++k) {
        term = (term * a / Real(k)).eval();
        result += term;
        if (one_norm<Real>(term) <= eps * one_norm<Real>(result)) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = (result * result).eval();
    }
    return result;
}

}  // namespace detail

template <typename Real>
CMatrix<Real> expm(const CMatrix<Real> &g) {
    if constexpr (std::is_same_v<Real, double>) {
        return g.exp();
    } else {
        return detail::expm_taylor<Real>(g);
    }
}

}  // namespace gridsense

#endif
