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

#ifndef GRIDSENSE_FOCK_HPP
#define GRIDSENSE_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include "gridsense/errors.hpp"
#include "gridsense/expm.hpp"
#include "gridsense/scalar.hpp"

namespace gridsense {

template <typename Real = double>
class FockSpace {
   public:
    using Matrix = CMatrix<Real>;

    explicit FockSpace(int dim) : dim_(dim) {
        if (dim < 2) {
            throw ValidationError("Fock space dimension must be at least 2, got " + std::to_string(dim));
        }
        using std::sqrt;
        auto ops = std::make_shared<Ops>();
        ops->a = Matrix::Zero(dim, dim);
        for (int n = 1; n < dim; ++n) {
            ops->a(n - 1, n) = Complex<Real>(sqrt(Real(n)), Real(0));
        }
        ops->ad = ops->a.adjoint();
        ops->n = ops->ad * ops->a;
        const Real rt2 = sqrt(Real(2));
        ops->q = (ops->a + ops->ad) / rt2;
        ops->p = (ops->ad - ops->a) * Complex<Real>(Real(0), Real(1) / rt2);
        ops_ = std::move(ops);
    }

    int dim() const noexcept { return dim_; }
    const Matrix &annihilation() const { return ops_->a; }
    const Matrix &creation() const { return ops_->ad; }
    const Matrix &number() const { return ops_->n; }
    const Matrix &position() const { return ops_->q; }
    const Matrix &momentum() const { return ops_->p; }
    Matrix identity() const { return Matrix::Identity(dim_, dim_); }

    friend bool operator==(const FockSpace &x, const FockSpace &y) { return x.dim_ == y.dim_; }

   private:
    struct Ops {
        Matrix a, ad, n, q, p;
    };
    int dim_;
    std::shared_ptr<const Ops> ops_;
};

template <typename Real>
std::pair<CMatrix<Real>, CMatrix<Real>> quadratures(const FockSpace<Real> &space) {
    return {space.position(), space.momentum()};
}

template <typename Real>
void check_finite(const Complex<Real> &beta) {
    using std::isfinite;
    if (!isfinite(beta.real()) || !isfinite(beta.imag())) {
        throw ValidationError("displacement amplitude must be finite");
    }
}

// beta a^dagger - conj(beta) a, the anti-Hermitian displacement generator.
template <typename Real>
CMatrix<Real> displacement_generator(const FockSpace<Real> &space, const Complex<Real> &beta) {
    using std::conj;
    return beta * space.creation() - conj(beta) * space.annihilation();
}

template <typename Real>
CMatrix<Real> displacement(const FockSpace<Real> &space, const Complex<Real> &beta) {
    check_finite<Real>(beta);
    if (beta == Complex<Real>(0)) {
        return space.identity();
    }
    return expm<Real>(displacement_generator(space, beta));
}

// D(beta) v without forming the matrix: substepped Taylor series of the
// bidiagonal generator.
template <typename Real, typename Derived>
CVector<Real> apply_displacement(const Complex<Real> &beta, const Eigen::MatrixBase<Derived> &v) {
    using std::abs;
    using std::ceil;
    using std::conj;
    using std::sqrt;
    check_finite<Real>(beta);
    const Eigen::Index n = v.size();
    CVector<Real> state = v;
    if (beta == Complex<Real>(0) || n == 0) {
        return state;
    }
    std::vector<Real> root(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        root[k] = sqrt(Real(k));
    }
    const double gnorm = 2.0 * static_cast<double>(abs(beta)) * std::sqrt(double(n - 1));
    const int steps = std::max(1, static_cast<int>(std::ceil(gnorm / 0.5)));
    const Complex<Real> b = beta / Real(steps);
    const Complex<Real> bc = conj(b);
    const Real eps = std::numeric_limits<Real>::epsilon();
    CVector<Real> term(n), next(n);
    for (int s = 0; s < steps; ++s) {
        term = state;
        for (int k = 1; k < 80; ++k) {
            for (Eigen::Index m = 0; m < n; ++m) {
                Complex<Real> acc(0);
                if (m > 0) {
                    acc += b * root[m] * term(m - 1);
                }
                if (m + 1 < n) {
                    acc -= bc * root[m + 1] * term(m + 1);
                }
                next(m) = acc / Real(k);
            }
            term.swap(next);
            state += term;
            if (term.norm() <= eps * state.norm()) {
                break;
            }
        }
    }
    return state;
}

template <typename Real = double>
struct Stabilizers {
    CMatrix<Real> sp;
    CMatrix<Real> sq;
};

template <typename Real>
Complex<Real> sp_amplitude() {
    using std::sqrt;
    return Complex<Real>(-sqrt(pi_v<Real>()), Real(0));
}

template <typename Real>
Complex<Real> sq_amplitude() {
    using std::sqrt;
    return Complex<Real>(Real(0), sqrt(pi_v<Real>()));
}

template <typename Real>
Stabilizers<Real> stabilizers(const FockSpace<Real> &space) {
    return {displacement(space, sp_amplitude<Real>()), displacement(space, sq_amplitude<Real>())};
}

template <typename Real = double>
class CavityState {
   public:
    using Vector = CVector<Real>;
    using Matrix = CMatrix<Real>;

    static CavityState pure(const FockSpace<Real> &space, Vector psi) {
        using std::abs;
        if (psi.size() != space.dim()) {
            throw DimensionMismatch("state vector length does not match Fock dimension");
        }
        if (abs(psi.norm() - Real(1)) > Real(1e-10)) {
            throw ValidationError("pure state is not normalized");
        }
        CavityState s(space);
        s.data_ = std::move(psi);
        return s;
    }

    static CavityState mixed(const FockSpace<Real> &space, Matrix rho) {
        using std::abs;
        if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
            throw DimensionMismatch("density matrix shape does not match Fock dimension");
        }
        if (static_cast<double>((rho - rho.adjoint()).cwiseAbs().maxCoeff()) > 1e-10) {
            throw ValidationError("density matrix is not Hermitian");
        }
        if (abs(rho.trace().real() - Real(1)) > Real(1e-8)) {
            throw ValidationError("density matrix trace differs from 1");
        }
        if constexpr (std::is_floating_point_v<Real>) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-8) {
                throw ValidationError("density matrix has a negative eigenvalue");
            }
        }
        CavityState s(space);
        s.data_ = std::move(rho);
        return s;
    }

    const FockSpace<Real> &space() const { return space_; }
    int dim() const { return space_.dim(); }
    bool is_pure() const { return std::holds_alternative<Vector>(data_); }
    const Vector &vector() const { return std::get<Vector>(data_); }
    Matrix density() const {
        if (is_pure()) {
            const Vector &v = vector();
            return v * v.adjoint();
        }
        return std::get<Matrix>(data_);
    }
    const Matrix &density_ref() const { return std::get<Matrix>(data_); }

    // Diagonal of the density matrix.
    Eigen::Matrix<Real, Eigen::Dynamic, 1> populations() const {
        Eigen::Matrix<Real, Eigen::Dynamic, 1> pop(dim());
        if (is_pure()) {
            const Vector &v = vector();
            for (int n = 0; n < dim(); ++n) {
                pop(n) = abs2<Real>(v(n));
            }
        } else {
            const Matrix &m = std::get<Matrix>(data_);
            for (int n = 0; n < dim(); ++n) {
                pop(n) = m(n, n).real();
            }
        }
        return pop;
    }

   private:
    explicit CavityState(const FockSpace<Real> &space) : space_(space) {}
    FockSpace<Real> space_;
    std::variant<Vector, Matrix> data_;
};

// Population in the top 5% of Fock levels.
template <typename Real, typename Derived>
Real edge_weight(const Eigen::MatrixBase<Derived> &pop) {
    const Eigen::Index n = pop.size();
    const Eigen::Index top = std::max<Eigen::Index>(1, (n * 5 + 99) / 100);
    Real w(0);
    for (Eigen::Index k = n - top; k < n; ++k) {
        w += pop(k);
    }
    return w;
}

template <typename Real>
Real edge_weight(const CavityState<Real> &state) {
    return edge_weight<Real>(state.populations());
}

template <typename Real>
Complex<Real> expectation(const CMatrix<Real> &op, const CavityState<Real> &state) {
    if (op.rows() != state.dim() || op.cols() != state.dim()) {
        throw DimensionMismatch("operator and state dimensions differ");
    }
    if (state.is_pure()) {
        const auto &v = state.vector();
        return v.dot(op * v);
    }
    return (op * state.density_ref()).trace();
}

template <typename Real>
Real mean_photon_number(const CavityState<Real> &state) {
    auto pop = state.populations();
    Real s(0);
    for (Eigen::Index n = 0; n < pop.size(); ++n) {
        s += Real(static_cast<double>(n)) * pop(n);
    }
    return s;
}

enum class Axis { q, p };

enum class StateKind { vacuum, coherent, squeezed_vacuum, number, grid, compass };

struct StateSpec {
    StateKind kind = StateKind::vacuum;
    std::complex<double> alpha = 0.0;
    double delta = 0.2;
    Axis axis = Axis::p;
    int n = 0;
};

std::string to_string(StateKind kind);
StateKind state_kind_from_string(const std::string &name);

namespace detail {

template <typename Real>
CavityState<Real> finish_state(const FockSpace<Real> &space, CVector<Real> amp, const Real &edge_tol,
                               const char *what) {
    using std::sqrt;
    Real kept = amp.squaredNorm();
    if (!(kept > Real(0))) {
        throw TruncationError(std::string(what) + ": no weight inside the truncated space");
    }
    amp /= sqrt(kept);
    Eigen::Matrix<Real, Eigen::Dynamic, 1> pop(amp.size());
    for (Eigen::Index k = 0; k < amp.size(); ++k) {
        pop(k) = abs2<Real>(amp(k));
    }
    Real lost = Real(1) - kept;
    if (lost < Real(0)) {
        lost = Real(0);
    }
    Real tail = edge_weight<Real>(pop) + lost;
    if (tail > edge_tol) {
        std::ostringstream os;
        os << what << ": population " << static_cast<double>(tail) << " near the truncation edge exceeds "
           << static_cast<double>(edge_tol) << " at dim " << space.dim();
        throw TruncationError(os.str());
    }
    return CavityState<Real>::pure(space, std::move(amp));
}

// Normalized amplitudes of a coherent state restricted to the first dim levels.
template <typename Real>
CVector<Real> coherent_amplitudes(int dim, const Complex<Real> &alpha) {
    using std::abs;
    using std::arg;
    using std::exp;
    using std::log;
    CVector<Real> c(dim);
    Real r = abs(alpha);
    if (r == Real(0)) {
        c.setZero();
        c(0) = Complex<Real>(1);
        return c;
    }
    Real lr = log(r);
    Real ph = arg(alpha);
    Real lf(0);
    for (int n = 0; n < dim; ++n) {
        if (n > 0) {
            lf += log(Real(n));
        }
        Real lmag = -r * r / Real(2) + Real(n) * lr - lf / Real(2);
        c(n) = exp(lmag) * expi<Real>(Real(n) * ph);
    }
    return c;
}

// Squeezed vacuum with Var(q) = exp(-2r)/2.
template <typename Real>
CVector<Real> squeezed_amplitudes(int dim, const Real &r) {
    using std::cosh;
    using std::sqrt;
    using std::tanh;
    CVector<Real> c = CVector<Real>::Zero(dim);
    Real t = -tanh(r);
    Complex<Real> cur(Real(1) / sqrt(cosh(r)));
    c(0) = cur;
    for (int m = 1; 2 * m < dim; ++m) {
        cur *= t * sqrt(Real(2 * m - 1) / Real(2 * m));
        c(2 * m) = cur;
    }
    return c;
}

// Projects the Gaussian-comb position wavefunction onto Hermite functions.
template <typename Real>
CVector<Real> grid_amplitudes(int dim, const Real &delta) {
    using std::ceil;
    using std::exp;
    using std::pow;
    using std::sqrt;
    const Real pi = pi_v<Real>();
    const Real spacing = sqrt(Real(2) * pi);
    const int tmax = static_cast<int>(std::ceil(4.0 / (std::sqrt(M_PI) * static_cast<double>(delta))));
    const Real reach = spacing * Real(tmax) + Real(12) * delta;
    const Real h = delta / Real(16);
    const int npts = static_cast<int>(std::ceil(static_cast<double>(reach / h)));
    std::vector<Real> weight(2 * tmax + 1);
    for (int t = -tmax; t <= tmax; ++t) {
        weight[t + tmax] = exp(-pi * delta * delta * Real(t) * Real(t));
    }
    std::vector<Real> rn(dim + 1), rratio(dim + 1);
    for (int n = 1; n <= dim; ++n) {
        rn[n] = sqrt(Real(2) / Real(n));
        rratio[n] = sqrt(Real(n - 1) / Real(n));
    }
    const Real norm0 = Real(1) / sqrt(sqrt(pi));
    std::vector<Real> acc(dim, Real(0));
    const Real inv2d2 = Real(1) / (Real(2) * delta * delta);
    for (int i = -npts; i <= npts; ++i) {
        Real q = h * Real(i);
        Real psi(0);
        int tc = static_cast<int>(std::lround(static_cast<double>(q / spacing)));
        for (int t = std::max(-tmax, tc - 2); t <= std::min(tmax, tc + 2); ++t) {
            Real d = q - spacing * Real(t);
            psi += weight[t + tmax] * exp(-d * d * inv2d2);
        }
        if (psi == Real(0)) {
            continue;
        }
        Real f0 = norm0 * exp(-q * q / Real(2));
        Real f1 = rn[1] * q * f0;
        acc[0] += f0 * psi;
        if (dim > 1) {
            acc[1] += f1 * psi;
        }
        for (int n = 2; n < dim; ++n) {
            Real f2 = rn[n] * q * f1 - rratio[n] * f0;
            acc[n] += f2 * psi;
            f0 = f1;
            f1 = f2;
        }
    }
    CVector<Real> c(dim);
    for (int n = 0; n < dim; ++n) {
        c(n) = Complex<Real>(acc[n] * h);
    }
    return c;
}

}  // namespace detail

template <typename Real = double>
CavityState<Real> vacuum(const FockSpace<Real> &space) {
    CVector<Real> c = CVector<Real>::Zero(space.dim());
    c(0) = Complex<Real>(1);
    return CavityState<Real>::pure(space, std::move(c));
}

template <typename Real = double>
CavityState<Real> number_state(const FockSpace<Real> &space, int n) {
    if (n < 0 || n >= space.dim()) {
        throw TruncationError("number state " + std::to_string(n) + " outside truncated space");
    }
    CVector<Real> c = CVector<Real>::Zero(space.dim());
    c(n) = Complex<Real>(1);
    return CavityState<Real>::pure(space, std::move(c));
}

template <typename Real = double>
CavityState<Real> coherent_state(const FockSpace<Real> &space, const Complex<Real> &alpha,
                                 const Real &edge_tol = Real(1e-10)) {
    check_finite<Real>(alpha);
    return detail::finish_state(space, detail::coherent_amplitudes<Real>(space.dim(), alpha), edge_tol,
                                "coherent state");
}

// axis names the squeezed quadrature: Var(axis) = delta^2 / 2.
template <typename Real = double>
CavityState<Real> squeezed_vacuum(const FockSpace<Real> &space, const Real &delta, Axis axis,
                                  const Real &edge_tol = Real(1e-10)) {
    using std::isfinite;
    using std::log;
    if (!isfinite(delta) || !(delta > Real(0))) {
        throw ValidationError("squeezing parameter must be positive and finite");
    }
    Real r = axis == Axis::q ? -log(delta) : log(delta);
    return detail::finish_state(space, detail::squeezed_amplitudes<Real>(space.dim(), r), edge_tol,
                                "squeezed vacuum");
}

template <typename Real = double>
CavityState<Real> grid_state(const FockSpace<Real> &space, const Real &delta, const Real &edge_tol = Real(1e-10)) {
    using std::isfinite;
    if (!isfinite(delta) || !(delta > Real(0)) || !(delta < Real(1))) {
        throw ValidationError("grid state requires 0 < delta < 1");
    }
    return detail::finish_state(space, detail::grid_amplitudes<Real>(space.dim(), delta), edge_tol, "grid state");
}

// (|a> + |-a> + |ia> + |-ia>) normalized.
template <typename Real = double>
CavityState<Real> compass_state(const FockSpace<Real> &space, const Complex<Real> &alpha,
                                const Real &edge_tol = Real(1e-10)) {
    check_finite<Real>(alpha);
    using std::abs;
    if (abs(alpha) == Real(0)) {
        return vacuum(space);
    }
    CVector<Real> c = detail::coherent_amplitudes<Real>(space.dim(), alpha);
    for (int n = 0; n < space.dim(); ++n) {
        if (n % 4 != 0) {
            c(n) = Complex<Real>(0);
        }
    }
    // Untruncated norm of the four-component sum, so the edge check also sees
    // the mass beyond the cutoff.
    using std::cos;
    using std::exp;
    using std::sqrt;
    Real x = abs(alpha) * abs(alpha);
    Real total = (Real(1) + exp(-Real(2) * x) + Real(2) * exp(-x) * cos(x)) / Real(4);
    c /= sqrt(total);
    return detail::finish_state(space, std::move(c), edge_tol, "compass state");
}

template <typename Real = double>
CavityState<Real> make_state(const FockSpace<Real> &space, const StateSpec &spec,
                             const Real &edge_tol = Real(1e-10)) {
    Complex<Real> alpha(Real(spec.alpha.real()), Real(spec.alpha.imag()));
    switch (spec.kind) {
        case StateKind::vacuum:
            return vacuum(space);
        case StateKind::coherent:
            return coherent_state(space, alpha, edge_tol);
        case StateKind::squeezed_vacuum:
            return squeezed_vacuum(space, Real(spec.delta), spec.axis, edge_tol);
        case StateKind::number:
            return number_state(space, spec.n);
        case StateKind::grid:
            return grid_state(space, Real(spec.delta), edge_tol);
        case StateKind::compass:
            return compass_state(space, alpha, edge_tol);
    }
    throw ValidationError("unknown state kind");
}

// Large-amplitude approximation of <compass| D(beta) |compass>, normalized to 1 at beta = 0.
double compass_overlap(double alpha, std::complex<double> beta);

}  // namespace gridsense

#endif
