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

#ifndef GRIDSENSE_ANALYTICS_HPP
#define GRIDSENSE_ANALYTICS_HPP

#include <vector>

namespace gridsense {

// Estimates v~ with v~/sqrt(2 pi) = -1/2 + y/N, y = 0..N-1.
std::vector<double> estimate_mesh(int m);

// Closed form sin^2(N pi d) / (N^2 sin^2(pi d)) with d = (v~ - v)/sqrt(2 pi).
double textbook_prob(double v_est, double v, int m);

// Direct four-fold sum over t1..t4 with the vacuum Gaussian factor.
double brute_force_pe_prob(double v_est, double v, int m);

struct Quadrature {
    double value = 0;
    double coarse = 0;
    int intervals = 0;
};

// int_S dv P(v~|v) = (1/sqrt(2 pi)) int dv P over the fundamental interval.
Quadrature marginal_probability(double v_est, int m, int intervals = 4096);

// I(v:v~) in bits; the accessible information is twice this.
Quadrature mutual_information(int m, int intervals = 4096);
double accessible_information(int m);

double msd(double v, int m);
double estimator_bias(double v, int m);
double estimator_variance(double v, int m);
double msd_bound(double alpha, int n);
bool in_msd_interval(double v, double alpha);

// f(gamma) = int_S dbeta exp(-|beta - gamma|^2); closed form by erf.
double smeared_coherent_overlap(double re, double im);
double smeared_coherent_overlap_midpoint(double re, double im, int cells);

// -(1/pi) int dgamma f log2 f + 2, in bits.
double wehrl_bound_compass(int points = 256, double window = 8.0);

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n, double lo, double hi);

}  // namespace gridsense

#endif
