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

#ifndef GRIDSENSE_SCALAR_HPP
#define GRIDSENSE_SCALAR_HPP

#include <complex>
#include <type_traits>

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>

namespace gridsense {

template <typename Real>
struct complex_of {
    using type = std::complex<Real>;
};

template <typename Real>
using Complex = typename complex_of<Real>::type;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using cdouble = std::complex<double>;
using VectorXc = CVector<double>;
using MatrixXc = CMatrix<double>;

template <typename Real>
inline Real pi_v() {
    return boost::math::constants::pi<Real>();
}

template <typename Real>
inline Complex<Real> cplx(const Real &re, const Real &im = Real(0)) {
    return Complex<Real>(re, im);
}

template <typename Real>
inline Complex<Real> expi(const Real &phase) {
    using std::cos;
    using std::sin;
    return Complex<Real>(cos(phase), sin(phase));
}

template <typename Real>
inline Real abs2(const Complex<Real> &z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

// Reduces an angle to [-pi, pi).
inline double wrap_phase(double x) {
    constexpr double two_pi = 2.0 * M_PI;
    double y = std::fmod(x + M_PI, two_pi);
    if (y < 0) {
        y += two_pi;
    }
    y -= M_PI;
    if (y >= M_PI) {
        y -= two_pi;
    }
    return y;
}

// Reduces x to the half-open interval [-period/2, period/2).
inline double wrap_centered(double x, double period) {
    double y = x / period - std::floor(x / period + 0.5);
    if (y >= 0.5) {
        y -= 1.0;
    }
    return y * period;
}

}  // namespace gridsense

#endif
