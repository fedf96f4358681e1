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

#include "gridsense/analytics.hpp"

#include <cmath>
#include <complex>
#include <iostream>

#include "gridsense/errors.hpp"

namespace gridsense {

namespace {

const double kRoot2Pi = std::sqrt(2.0 * M_PI);

void check_rounds(int m, int max_m) {
    if (m < 1 || m > max_m) {
        throw ValidationError("number of rounds must lie in [1, " + std::to_string(max_m) + "], got " +
                              std::to_string(m));
    }
}

double simpson(const std::vector<double> &f, double h) {
    const size_t n = f.size() - 1;
    double s = f.front() + f.back();
    for (size_t k = 1; k < n; ++k) {
        s += (k % 2 ? 4.0 : 2.0) * f[k];
    }
    return s * h / 3.0;
}

template <typename F>
Quadrature simpson_checked(F &&g, double lo, double hi, int intervals, double tol) {
    if (intervals < 2 || intervals % 2) {
        throw ValidationError("Simpson rule needs an even number of intervals");
    }
    auto run = [&](int n) {
        std::vector<double> f(n + 1);
        double h = (hi - lo) / n;
        for (int k = 0; k <= n; ++k) {
            f[k] = g(lo + k * h);
        }
        return simpson(f, h);
    };
    Quadrature q;
    q.coarse = run(intervals / 2);
    q.value = run(intervals);
    q.intervals = intervals;
    while (std::abs(q.value - q.coarse) > tol) {
        if (q.intervals >= (1 << 20)) {
            throw NumericalError("quadrature failed to converge");
        }
        q.coarse = q.value;
        q.intervals *= 2;
        q.value = run(q.intervals);
    }
    return q;
}

}  // namespace

std::vector<double> estimate_mesh(int m) {
    check_rounds(m, 30);
    const int n = 1 << m;
    std::vector<double> mesh(n);
    for (int y = 0; y < n; ++y) {
        mesh[y] = kRoot2Pi * (-0.5 + double(y) / n);
    }
    return mesh;
}

double textbook_prob(double v_est, double v, int m) {
    check_rounds(m, 30);
    const double n = std::ldexp(1.0, m);
    const double d = (v_est - v) / kRoot2Pi;
    const double eps = d - std::round(d);
    const double den = std::sin(M_PI * eps);
    if (std::abs(den) < 1e-6) {
        double x = M_PI * eps;
        return 1.0 - (n * n - 1.0) * x * x / 3.0;
    }
    const double r = std::sin(M_PI * n * eps) / (n * den);
    return r * r;
}

double brute_force_pe_prob(double v_est, double v, int m) {
    check_rounds(m, 4);
    const int n = 1 << m;
    const double w = (v_est - v) * kRoot2Pi;
    // Sum over x at fixed s = t2 - t1 + t4 - t3 and t4 - t3 = d2.
    std::complex<double> total = 0;
    for (int x = 0; x < n; ++x) {
        for (int t1 = 0; t1 < n; ++t1) {
            for (int t2 = 0; t2 < n; ++t2) {
                for (int t3 = 0; t3 < n; ++t3) {
                    for (int t4 = 0; t4 < n; ++t4) {
                        int s = t2 - t1 + t4 - t3;
                        double phase = 2.0 * M_PI * x * s / n + w * (t4 - t3);
                        total += std::polar(std::exp(-M_PI * s * s / 2.0), phase);
                    }
                }
            }
        }
    }
    double n4 = double(n) * n * n * n;
    return total.real() / n4;
}

Quadrature marginal_probability(double v_est, int m, int intervals) {
    const double half = std::sqrt(M_PI / 2.0);
    auto g = [&](double v) { return textbook_prob(v_est, v, m) / kRoot2Pi; };
    return simpson_checked(g, -half, half, intervals, 1e-10);
}

Quadrature mutual_information(int m, int intervals) {
    check_rounds(m, 16);
    const double half = std::sqrt(M_PI / 2.0);
    const std::vector<double> mesh = estimate_mesh(m);
    auto g = [&](double v) {
        double s = 0;
        for (double ve : mesh) {
            double p = textbook_prob(ve, v, m);
            if (p > 0) {
                s += p * std::log2(p);
            }
        }
        return s;
    };
    Quadrature q = simpson_checked(g, -half, half, intervals, 1e-7);
    q.value = m + q.value / kRoot2Pi;
    q.coarse = m + q.coarse / kRoot2Pi;
    return q;
}

double accessible_information(int m) { return 2.0 * mutual_information(m).value; }

bool in_msd_interval(double v, double alpha) {
    const double edge = std::sqrt(M_PI / 2.0) * (1.0 - 2.0 * alpha);
    return v >= -edge && v <= edge;
}

double msd(double v, int m) {
    double s = 0;
    for (double ve : estimate_mesh(m)) {
        s += textbook_prob(ve, v, m) * (ve - v) * (ve - v);
    }
    return s;
}

double estimator_bias(double v, int m) {
    double s = 0;
    for (double ve : estimate_mesh(m)) {
        s += textbook_prob(ve, v, m) * ve;
    }
    return s - v;
}

double estimator_variance(double v, int m) {
    double mean = estimator_bias(v, m) + v;
    double s = 0;
    for (double ve : estimate_mesh(m)) {
        s += textbook_prob(ve, v, m) * (ve - mean) * (ve - mean);
    }
    return s;
}

double msd_bound(double alpha, int n) {
    if (!(alpha > 0 && alpha < 0.5) || n < 1) {
        throw ValidationError("msd bound needs 0 < alpha < 1/2 and N >= 1");
    }
    double s = std::sin(M_PI * (alpha - 1.0 / (2.0 * n)));
    return 2.0 * M_PI * (1.0 - alpha) * (1.0 - alpha) / (n * s * s);
}

double smeared_coherent_overlap(double re, double im) {
    const double h = std::sqrt(M_PI) / 2.0;
    auto g = [&](double a) { return 0.5 * std::sqrt(M_PI) * (std::erf(h - a) + std::erf(h + a)); };
    return g(re) * g(im) / M_PI;
}

double smeared_coherent_overlap_midpoint(double re, double im, int cells) {
    const double h = std::sqrt(M_PI) / 2.0;
    const double step = 2.0 * h / cells;
    double s = 0;
    for (int i = 0; i < cells; ++i) {
        double y = -h + (i + 0.5) * step - im;
        for (int j = 0; j < cells; ++j) {
            double x = -h + (j + 0.5) * step - re;
            s += std::exp(-x * x - y * y);
        }
    }
    return s * step * step / M_PI;
}

GaussLegendre gauss_legendre(int n, double lo, double hi) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        gl.nodes[i] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
        gl.weights[i] = (hi - lo) / ((1 - x * x) * dp * dp);
    }
    return gl;
}

double wehrl_bound_compass(int points, double window) {
    GaussLegendre gl = gauss_legendre(points, -window, window);
    std::vector<double> g(points);
    const double h = std::sqrt(M_PI) / 2.0;
    for (int i = 0; i < points; ++i) {
        double a = gl.nodes[i];
        g[i] = 0.5 * std::sqrt(M_PI) * (std::erf(h - a) + std::erf(h + a));
    }
    double s = 0;
    for (int i = 0; i < points; ++i) {
        for (int j = 0; j < points; ++j) {
            double f = g[i] * g[j] / M_PI;
            if (f > 0) {
                s -= gl.weights[i] * gl.weights[j] * f * std::log2(f);
            }
        }
    }
    return s / M_PI + 2.0;
}

}  // namespace gridsense
