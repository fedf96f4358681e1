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

#include "gridsense/noise.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "gridsense/expm.hpp"

namespace gridsense {

double NoiseParams::t_gate() const { return M_PI / (2.0 * chi); }

void NoiseParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(chi) || !(chi > 0)) {
        throw ValidationError("chi must be positive and finite");
    }
    for (auto [name, x] : {std::pair{"kerr", kerr}, std::pair{"kerr_cq", kerr_cq}}) {
        if (!finite(x)) {
            throw ValidationError(std::string(name) + " must be finite");
        }
    }
    for (auto [name, x] : {std::pair{"kappa", kappa}, std::pair{"gamma", gamma}}) {
        if (!finite(x) || x < 0) {
            throw ValidationError(std::string(name) + " must be non-negative and finite");
        }
    }
    for (auto [name, x] : {std::pair{"p_readout", p_readout}, std::pair{"p_projection", p_projection}}) {
        if (!(x >= 0 && x <= 0.5)) {
            throw ValidationError(std::string(name) + " must lie in [0, 1/2]");
        }
    }
    if (!finite(t_readout) || t_readout < 0) {
        throw ValidationError("readout time must be non-negative and finite");
    }
}

HamiltonianSpec HamiltonianSpec::from(const NoiseParams &noise) {
    HamiltonianSpec h;
    h.kerr = noise.kerr != 0;
    h.nonlinear = noise.kerr_cq != 0;
    return h;
}

Eigen::VectorXd diagonal_energies(int dim, const HamiltonianSpec &h, const NoiseParams &noise) {
    Eigen::VectorXd e(2 * dim);
    for (int q = 0; q < 2; ++q) {
        const double z = q == 0 ? 1.0 : -1.0;
        for (int n = 0; n < dim; ++n) {
            const double nn = n * (n - 1.0);
            double v = 0;
            if (h.dispersive) {
                v -= noise.chi * z * n;
            }
            if (h.kerr) {
                v -= 0.5 * noise.kerr * nn;
            }
            if (h.nonlinear) {
                v -= 0.5 * noise.kerr_cq * nn * z;
            }
            e(q * dim + n) = v;
        }
    }
    return e;
}

MatrixXc hamiltonian_matrix(int dim, const HamiltonianSpec &h, const NoiseParams &noise) {
    return diagonal_energies(dim, h, noise).cast<cdouble>().asDiagonal();
}

namespace {

Eigen::VectorXd loss_rates(int dim, const NoiseParams &noise) {
    Eigen::VectorXd g(2 * dim);
    for (int q = 0; q < 2; ++q) {
        for (int n = 0; n < dim; ++n) {
            g(q * dim + n) = noise.kappa * n + (q == 1 ? noise.gamma : 0.0);
        }
    }
    return g;
}

// Jump part of the dissipator: kappa a X a^dagger + gamma s- X s+.
MatrixXc jump(const MatrixXc &x, int dim, const Eigen::VectorXd &root, double kappa, double gamma) {
    MatrixXc y = MatrixXc::Zero(2 * dim, 2 * dim);
    if (kappa != 0) {
        const int m = dim - 1;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                y.block(a * dim, b * dim, m, m) =
                    kappa * (root * root.transpose()).cast<cdouble>().cwiseProduct(x.block(a * dim + 1, b * dim + 1, m, m));
            }
        }
    }
    if (gamma != 0) {
        y.topLeftCorner(dim, dim) += gamma * x.block(dim, dim, dim, dim);
    }
    return y;
}

}  // namespace

CompositeState lindblad_evolve(const CompositeState &state, const HamiltonianSpec &h, const NoiseParams &noise,
                               double duration, const LindbladOptions &opts, IntegratorStats *stats) {
    noise.validate();
    if (!(duration >= 0) || !std::isfinite(duration)) {
        throw ValidationError("evolution time must be non-negative");
    }
    const int dim = state.dim();
    const Eigen::VectorXd e = diagonal_energies(dim, h, noise);
    const Eigen::VectorXd g = loss_rates(dim, noise);
    Eigen::VectorXd root(dim - 1);
    for (int n = 0; n < dim - 1; ++n) {
        root(n) = std::sqrt(n + 1.0);
    }
    auto frame = [&](double t) {
        Eigen::VectorXcd v(2 * dim);
        for (int i = 0; i < 2 * dim; ++i) {
            v(i) = std::exp(cdouble(-0.5 * g(i) * t, -e(i) * t));
        }
        return v;
    };
    auto rhs = [&](double t, const MatrixXc &y) -> MatrixXc {
        Eigen::VectorXcd f = frame(t);
        MatrixXc big = f * f.adjoint();
        MatrixXc r = jump(big.cwiseProduct(y), dim, root, noise.kappa, noise.gamma);
        return r.cwiseQuotient(big);
    };

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                            e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    MatrixXc y = state.matrix();
    double t = 0;
    double step = duration / 20;
    long accepted = 0, rejected = 0;
    if (duration > 0) {
        MatrixXc k1 = rhs(0, y);
        while (t < duration) {
            if (accepted + rejected > opts.max_steps) {
                throw IntegratorError("Lindblad integration exceeded the step budget");
            }
            if (step < duration * 1e-14) {
                throw IntegratorError("Lindblad step size underflow");
            }
            const double hstep = std::min(step, duration - t);
            MatrixXc k2 = rhs(t + hstep / 5, y + hstep * a21 * k1);
            MatrixXc k3 = rhs(t + 0.3 * hstep, y + hstep * (a31 * k1 + a32 * k2));
            MatrixXc k4 = rhs(t + 0.8 * hstep, y + hstep * (a41 * k1 + a42 * k2 + a43 * k3));
            MatrixXc k5 = rhs(t + hstep * 8.0 / 9, y + hstep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            MatrixXc k6 = rhs(t + hstep, y + hstep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            MatrixXc ynew = y + hstep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            MatrixXc k7 = rhs(t + hstep, ynew);
            MatrixXc err = hstep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double norm = 0;
            for (Eigen::Index j = 0; j < y.cols(); ++j) {
                for (Eigen::Index i = 0; i < y.rows(); ++i) {
                    double sc = opts.atol + opts.rtol * std::max(std::abs(y(i, j)), std::abs(ynew(i, j)));
                    norm = std::max(norm, std::abs(err(i, j)) / sc);
                }
            }
            if (!std::isfinite(norm)) {
                throw IntegratorError("Lindblad integration produced non-finite values");
            }
            if (norm <= 1.0) {
                t += hstep;
                y = std::move(ynew);
                k1 = std::move(k7);
                ++accepted;
            } else {
                ++rejected;
            }
            double fac = norm == 0 ? 5.0 : 0.9 * std::pow(norm, -0.2);
            step = hstep * std::clamp(fac, 0.2, 5.0);
        }
        Eigen::VectorXcd f = frame(duration);
        y = y.cwiseProduct(f * f.adjoint());
    }
    if (stats) {
        stats->accepted += accepted;
        stats->rejected += rejected;
    }
    return CompositeState(state.space(), std::move(y));
}

LinePropagator::LinePropagator(int dim, const HamiltonianSpec &h, const NoiseParams &noise, double duration)
    : dim_(dim) {
    noise.validate();
    const Eigen::VectorXd e = diagonal_energies(dim, h, noise);
    const Eigen::VectorXd g = loss_rates(dim, noise);
    auto lambda = [&](int i, int j) { return cdouble(-0.5 * (g(i) + g(j)), -(e(i) - e(j))); };
    const bool coupled = noise.gamma != 0;
    using Sector = std::pair<int, int>;
    std::vector<std::vector<Sector>> groups;
    if (coupled) {
        groups = {{{0, 0}, {1, 1}}, {{0, 1}}, {{1, 0}}};
    } else {
        groups = {{{0, 0}}, {{1, 1}}, {{0, 1}}, {{1, 0}}};
    }
    for (int d = -(dim - 1); d <= dim - 1; ++d) {
        const int n0 = std::max(0, d);
        const int n1 = std::min(dim - 1, dim - 1 + d);
        const int len = n1 - n0 + 1;
        for (const auto &grp : groups) {
            Line line;
            const int size = len * static_cast<int>(grp.size());
            line.rows.reserve(size);
            line.cols.reserve(size);
            for (auto [a, b] : grp) {
                for (int n = n0; n <= n1; ++n) {
                    line.rows.push_back(a * dim + n);
                    line.cols.push_back(b * dim + n - d);
                }
            }
            Eigen::VectorXcd diag(size);
            for (int k = 0; k < size; ++k) {
                diag(k) = lambda(line.rows[k], line.cols[k]);
            }
            if (noise.kappa == 0 && grp.size() == 1) {
                line.diagonal = true;
                line.diag = (diag * duration).array().exp();
            } else {
                MatrixXc gen = MatrixXc::Zero(size, size);
                gen.diagonal() = diag;
                for (std::size_t s = 0; s < grp.size(); ++s) {
                    for (int k = 0; k + 1 < len; ++k) {
                        const int n = n0 + k;
                        const int m = n - d;
                        const int idx = static_cast<int>(s) * len + k;
                        gen(idx, idx + 1) = noise.kappa * std::sqrt((n + 1.0) * (m + 1.0));
                    }
                }
                if (grp.size() == 2) {
                    for (int k = 0; k < len; ++k) {
                        gen(k, len + k) = noise.gamma;
                    }
                }
                line.prop = expm<double>((gen * duration).eval());
            }
            lines_.push_back(std::move(line));
        }
    }
}

CompositeState LinePropagator::apply(const CompositeState &state) const {
    if (state.dim() != dim_) {
        throw DimensionMismatch("propagator dimension does not match the state");
    }
    const MatrixXc &in = state.matrix();
    MatrixXc out(in.rows(), in.cols());
    Eigen::VectorXcd v, w;
    for (const auto &line : lines_) {
        const int size = static_cast<int>(line.rows.size());
        v.resize(size);
        for (int k = 0; k < size; ++k) {
            v(k) = in(line.rows[k], line.cols[k]);
        }
        if (line.diagonal) {
            w = line.diag.cwiseProduct(v);
        } else {
            w.noalias() = line.prop * v;
        }
        for (int k = 0; k < size; ++k) {
            out(line.rows[k], line.cols[k]) = w(k);
        }
    }
    return CompositeState(state.space(), std::move(out));
}

GateChannel::GateChannel(int dim, const NoiseParams &noise, Integrator integrator, const LindbladOptions &opts)
    : noise_(noise), h_(HamiltonianSpec::from(noise)), integrator_(integrator), opts_(opts) {
    noise_.validate();
    const double t = noise_.t_gate();
    if (!noise_.stochastic()) {
        unitary_diag_ = true;
        Eigen::VectorXd e = diagonal_energies(dim, h_, noise_);
        phases_.resize(e.size());
        for (Eigen::Index i = 0; i < e.size(); ++i) {
            phases_(i) = expi(-e(i) * t);
        }
    } else if (integrator_ == Integrator::exact) {
        exact_ = std::make_shared<LinePropagator>(dim, h_, noise_, t);
    }
}

CompositeState GateChannel::apply(const CompositeState &state) const {
    if (unitary_diag_) {
        if (phases_.size() != 2 * state.dim()) {
            throw DimensionMismatch("gate dimension does not match the state");
        }
        MatrixXc m = state.matrix().cwiseProduct(phases_ * phases_.adjoint());
        return CompositeState(state.space(), std::move(m));
    }
    if (exact_) {
        return exact_->apply(state);
    }
    return lindblad_evolve(state, h_, noise_, noise_.t_gate(), opts_);
}

CompositeState idle_damping(const CompositeState &state, double gamma, double t) {
    if (!(gamma >= 0) || !(t >= 0)) {
        throw ValidationError("idle damping needs non-negative rate and time");
    }
    const double p = -std::expm1(-gamma * t);
    if (p == 0) {
        return state;
    }
    CompositeState out = state;
    const double s = std::sqrt(1 - p);
    out.block(0, 0) += p * state.block(1, 1);
    out.block(0, 1) *= s;
    out.block(1, 0) *= s;
    out.block(1, 1) *= (1 - p);
    return out;
}

namespace {

CompositeState sandwich(const CompositeState &state, const std::vector<Qubit2> &kraus) {
    const int n = state.dim();
    MatrixXc out = MatrixXc::Zero(2 * n, 2 * n);
    for (const auto &k : kraus) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                auto o = out.block(a * n, b * n, n, n);
                for (int c = 0; c < 2; ++c) {
                    for (int d = 0; d < 2; ++d) {
                        cdouble w = k(a, c) * std::conj(k(b, d));
                        if (w != cdouble(0)) {
                            o += w * state.block(c, d);
                        }
                    }
                }
            }
        }
    }
    return CompositeState(state.space(), std::move(out));
}

void check_bit(int x) {
    if (x != 0 && x != 1) {
        throw ValidationError("measurement outcome must be 0 or 1");
    }
}

void check_probability(double p) {
    if (!(p >= 0 && p <= 0.5)) {
        throw ValidationError("error probability must lie in [0, 1/2]");
    }
}

Qubit2 projection_operator(int x, double p) {
    return std::sqrt(1 - p) * qubit::projector(x) + std::sqrt(p) * qubit::projector(1 - x);
}

}  // namespace

Readout readout_error(const CompositeState &state, int x, double p) {
    check_bit(x);
    check_probability(p);
    return {x, sandwich(state, {std::sqrt(1 - p) * qubit::projector(x), std::sqrt(p) * qubit::projector(1 - x)})};
}

CompositeState imperfect_projection(const CompositeState &state, int x, double p) {
    check_bit(x);
    check_probability(p);
    return sandwich(state, {projection_operator(x, p)});
}

std::vector<Qubit2> measurement_kraus(int x, const NoiseParams &noise) {
    check_bit(x);
    check_probability(noise.p_readout);
    check_probability(noise.p_projection);
    std::vector<Qubit2> ks;
    if (noise.p_readout < 1) {
        ks.push_back(std::sqrt(1 - noise.p_readout) * projection_operator(x, noise.p_projection));
    }
    if (noise.p_readout > 0) {
        ks.push_back(std::sqrt(noise.p_readout) * projection_operator(1 - x, noise.p_projection));
    }
    return ks;
}

CompositeState measurement_branch(const CompositeState &state, int x, const NoiseParams &noise) {
    return sandwich(state, measurement_kraus(x, noise));
}

void ChannelAudit::record(const CompositeState &before, const CompositeState &after) {
    ++evolutions;
    max_trace_error = std::max(max_trace_error, std::abs(after.trace() - before.trace()));
    const MatrixXc &m = after.matrix();
    max_hermiticity_error = std::max(max_hermiticity_error, (m - m.adjoint()).cwiseAbs().maxCoeff());
    double t = after.trace();
    if (t > 0) {
        min_eigenvalue = std::min(min_eigenvalue, after.min_eigenvalue() / t);
    }
}

void ChannelAudit::merge(const ChannelAudit &o) {
    evolutions += o.evolutions;
    max_trace_error = std::max(max_trace_error, o.max_trace_error);
    max_hermiticity_error = std::max(max_hermiticity_error, o.max_hermiticity_error);
    min_eigenvalue = std::min(min_eigenvalue, o.min_eigenvalue);
}

}  // namespace gridsense
