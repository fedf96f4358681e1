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

#include "gridsense/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace gridsense {

SqueezingReport squeezing_report(const CavityState<double> &state, const Stabilizers<double> &stab) {
    SqueezingReport r;
    cdouble tp = expectation(stab.sp, state);
    cdouble tq = expectation(stab.sq, state);
    r.delta_p = squeezing_from_modulus(std::abs(tp));
    r.delta_q = squeezing_from_modulus(std::abs(tq));
    r.theta_p = std::arg(tp);
    r.theta_q = std::arg(tq);
    r.n_mean = mean_photon_number(state);
    return r;
}

WrappedStats wrapped_gaussian_stats(const std::vector<double> &theta, const std::vector<double> &prob) {
    if (theta.size() != prob.size()) {
        throw DimensionMismatch("phase and probability arrays differ in length");
    }
    cdouble m = 0;
    for (size_t k = 0; k < theta.size(); ++k) {
        m += prob[k] * std::polar(1.0, theta[k]);
    }
    double r = std::abs(m);
    if (r < kPhaseThreshold) {
        throw UndefinedPhaseError("mean phasor vanishes");
    }
    WrappedStats s;
    s.mu = std::arg(m);
    s.sigma = std::sqrt(std::max(0.0, -2.0 * std::log(r)));
    s.holevo = std::sqrt(std::max(0.0, 1.0 / (r * r) - 1.0));
    return s;
}

Moments quadrature_moments(const CavityState<double> &psi) {
    if (!psi.is_pure()) {
        throw ValidationError("quadrature moments are computed for pure states");
    }
    const auto &v = psi.vector();
    VectorXc qv = psi.space().position() * v;
    VectorXc pv = psi.space().momentum() * v;
    Moments m;
    m.mean_q = v.dot(qv).real();
    m.mean_p = v.dot(pv).real();
    m.var_q = qv.squaredNorm() - m.mean_q * m.mean_q;
    m.var_p = pv.squaredNorm() - m.mean_p * m.mean_p;
    m.sym_pq = pv.dot(qv).real();
    return m;
}

FisherMatrix fisher_matrix(const CavityState<double> &psi) {
    Moments m = quadrature_moments(psi);
    FisherMatrix f;
    f.m(0, 0) = 4.0 * m.var_p;
    f.m(1, 1) = 4.0 * m.var_q;
    f.m(0, 1) = f.m(1, 0) = 4.0 * (m.mean_p * m.mean_q - m.sym_pq);
    return f;
}

double cramer_rao_sum(const FisherMatrix &f) {
    double det = f.m.determinant();
    if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) {
        throw NumericalError("Fisher matrix is singular");
    }
    return f.m.inverse().trace();
}

Mesh Mesh::uniform(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) {
        throw ValidationError("mesh needs at least two points and hi > lo");
    }
    Mesh mesh;
    for (int k = 0; k < points; ++k) {
        double x = lo + (hi - lo) * k / (points - 1);
        mesh.q.push_back(x);
        mesh.p.push_back(x);
    }
    return mesh;
}

namespace {

int support_dim(const MatrixXc &rho) {
    int d = static_cast<int>(rho.rows());
    while (d > 1 && std::abs(rho(d - 1, d - 1)) < 1e-18) {
        --d;
    }
    return d;
}

}  // namespace

// Clenshaw summation over each diagonal of rho with associated Laguerre
// polynomials in 2|beta|^2 scaled form.
Eigen::MatrixXd wigner(const CavityState<double> &state, const Mesh &mesh) {
    MatrixXc rho = state.density();
    const int dim = support_dim(rho);
    const int nq = static_cast<int>(mesh.q.size());
    const int np = static_cast<int>(mesh.p.size());
    const int total = nq * np;
    Eigen::MatrixXd out(nq, np);
    if (dim == 1) {
        rho.conservativeResize(2, 2);
        rho.row(1).setZero();
        rho.col(1).setZero();
    }
    const int m = std::max(dim, 2);
    MatrixXc c = rho.topLeftCorner(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i != j) {
                c(i, j) *= 2.0;
            }
        }
    }
    constexpr int kChunk = 4096;
    for (int start = 0; start < total; start += kChunk) {
        const int cnt = std::min(kChunk, total - start);
        Eigen::ArrayXcd a(cnt);
        for (int k = 0; k < cnt; ++k) {
            int idx = start + k;
            a(k) = std::sqrt(2.0) * cdouble(mesh.q[idx / np], mesh.p[idx % np]);
        }
        const Eigen::ArrayXd b = a.abs2();
        Eigen::ArrayXcd w0 = Eigen::ArrayXcd::Constant(cnt, c(0, m - 1));
        Eigen::ArrayXcd y0(cnt), y1(cnt), tmp(cnt);
        for (int l = m - 2; l >= 0; --l) {
            const int n = m - l;
            auto coef = [&](int idx) { return c(idx, idx + l); };
            if (n == 2) {
                y0.setConstant(coef(0));
                y1.setConstant(coef(1));
            } else {
                int k = n;
                y0.setConstant(coef(n - 2));
                y1.setConstant(coef(n - 1));
                for (int i = 3; i <= n; ++i) {
                    --k;
                    double r1 = std::sqrt(double(k - 1) * double(l + k - 1) / (double(l + k) * double(k)));
                    double r2 = 1.0 / std::sqrt(double(l + k) * double(k));
                    tmp = coef(n - i) - y1 * r1;
                    y1 = y0 - y1 * ((double(l + 2 * k - 1) - b) * r2);
                    y0 = tmp;
                }
            }
            w0 = y0 - y1 * ((double(l + 1) - b) / std::sqrt(double(l + 1))) + w0 * a / std::sqrt(double(l + 1));
        }
        Eigen::ArrayXd w = w0.real() * (-0.5 * b).exp() / M_PI;
        for (int k = 0; k < cnt; ++k) {
            int idx = start + k;
            out(idx / np, idx % np) = w(k);
        }
    }
    return out;
}

double wigner_period(const Eigen::MatrixXd &w, const Mesh &mesh, Axis axis) {
    const Eigen::MatrixXd m = axis == Axis::q ? w : Eigen::MatrixXd(w.transpose());
    const std::vector<double> &x = axis == Axis::q ? mesh.q : mesh.p;
    const int n = static_cast<int>(m.rows());
    const int lags = n / 2;
    std::vector<double> c(lags);
    for (int s = 0; s < lags; ++s) {
        c[s] = (m.topRows(n - s).array() * m.bottomRows(n - s).array()).sum();
    }
    int s0 = 1;
    while (s0 + 1 < lags && !(c[s0] <= c[s0 - 1] && c[s0] <= c[s0 + 1])) {
        ++s0;
    }
    int best = -1;
    for (int s = s0 + 1; s + 1 < lags; ++s) {
        if (c[s] >= c[s - 1] && c[s] >= c[s + 1] && (best < 0 || c[s] > c[best])) {
            best = s;
        }
    }
    if (best < 0) {
        throw NumericalError("no periodic structure found in the Wigner function");
    }
    double denom = c[best - 1] - 2.0 * c[best] + c[best + 1];
    double shift = denom != 0.0 ? 0.5 * (c[best - 1] - c[best + 1]) / denom : 0.0;
    double h = x[1] - x[0];
    return (best + shift) * h;
}

double von_neumann_entropy(const MatrixXc &rho, double base) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        double lam = es.eigenvalues()(k);
        if (lam > 1e-14) {
            s -= lam * std::log(lam);
        }
    }
    return s / std::log(base);
}

MatrixXc displaced_mixture(const CavityState<double> &psi, int l) {
    if (l < 1) {
        throw ValidationError("mixture grid needs at least one cell per axis");
    }
    if (!psi.is_pure()) {
        throw ValidationError("displaced mixture expects a pure sensor state");
    }
    const auto &space = psi.space();
    const int dim = space.dim();
    const double half = std::sqrt(M_PI) / 2.0;
    const double h = 2.0 * half / l;
    const double weight = h * h / M_PI;
    std::vector<VectorXc> shifted_re(l);
    for (int j = 0; j < l; ++j) {
        double x = -half + (j + 0.5) * h;
        shifted_re[j] = displacement(space, cdouble(x, 0.0)) * psi.vector();
    }
    MatrixXc cols(dim, static_cast<Eigen::Index>(l) * l);
    const double scale = std::sqrt(weight);
    for (int i = 0; i < l; ++i) {
        double y = -half + (i + 0.5) * h;
        MatrixXc d = displacement(space, cdouble(0.0, y));
        for (int j = 0; j < l; ++j) {
            cols.col(static_cast<Eigen::Index>(i) * l + j) = scale * (d * shifted_re[j]);
        }
    }
    MatrixXc rho = cols * cols.adjoint();
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace gridsense
