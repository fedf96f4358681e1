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

#ifndef GRIDSENSE_CONFIG_HPP
#define GRIDSENSE_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gridsense/experiments.hpp"

namespace gridsense {

enum class Command { prepare, sense, analytics, wigner, sweep };

std::string to_string(Command c);
Command command_from_string(const std::string &name);

// How a damping rate quoted in Hz becomes gamma in 1/s.
enum class RateConvention { angular, plain };

// Laboratory-unit noise inputs as they appear in config files.
struct LabNoise {
    double chi_hz = 2.4e6;
    double kerr_hz = 0;
    double kerr_cq_hz = 0;
    double kappa_hz = 0;
    double gamma_hz = 0;
    RateConvention gamma_convention = RateConvention::angular;
    double p_readout = 0;
    double p_projection = 0;
    double t_readout_s = 150e-9;

    NoiseParams to_params() const;
    bool operator==(const LabNoise &) const = default;
};

struct SenseConfig {
    double u = 0;
    double v = 0;
    int samples_per_branch = 1;
    bool operator==(const SenseConfig &) const = default;
};

struct WignerConfig {
    double lo = -6;
    double hi = 6;
    int points = 201;
    bool operator==(const WignerConfig &) const = default;
};

struct AnalyticsConfig {
    int m_min = 1;
    int m_max = 8;
    std::vector<double> alphas{0.1, 0.25};
    bool operator==(const AnalyticsConfig &) const = default;
};

struct SweepConfig {
    // One of kerr, kerr_cq, kappa, gamma (Hz) or p_readout, p_projection.
    std::string parameter = "kerr";
    std::vector<double> values;
    bool operator==(const SweepConfig &) const = default;
};

struct OutputConfig {
    std::string dir = ".";
    std::string format = "csv";
    int precision = 12;
    bool operator==(const OutputConfig &) const = default;
};

struct RunConfig {
    Command command = Command::prepare;
    ProtocolSpec protocol;
    bool sample = false;
    LabNoise noise;
    SenseConfig sense;
    WignerConfig wigner;
    AnalyticsConfig analytics;
    SweepConfig sweep;
    OutputConfig output;
    // Unit conversions performed while parsing.
    std::vector<std::string> log;

    // Applies the lab noise to the protocol and validates everything.
    void finalize();
    std::vector<NoiseParams> sweep_grid() const;
};

bool same_settings(const RunConfig &a, const RunConfig &b);

// Line-oriented `key = value` under `[section]`; '#' and ';' start comments.
RunConfig parse_config(std::istream &in, const std::string &name = "<config>");
RunConfig parse_config_file(const std::string &path);
RunConfig parse_config_string(const std::string &text);

std::string emit_config(const RunConfig &cfg);

}  // namespace gridsense

#endif
