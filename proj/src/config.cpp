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

#include "gridsense/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gridsense/csv.hpp"

namespace gridsense {

std::string to_string(Command c) {
    switch (c) {
        case Command::prepare:
            return "prepare";
        case Command::sense:
            return "sense";
        case Command::analytics:
            return "analytics";
        case Command::wigner:
            return "wigner";
        case Command::sweep:
            return "sweep";
    }
    return "unknown";
}

Command command_from_string(const std::string &name) {
    for (Command c : {Command::prepare, Command::sense, Command::analytics, Command::wigner, Command::sweep}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw ValidationError("unknown command '" + name + "'");
}

NoiseParams LabNoise::to_params() const {
    const double w = 2 * M_PI;
    NoiseParams n;
    n.chi = w * chi_hz;
    n.kerr = w * kerr_hz;
    n.kerr_cq = w * kerr_cq_hz;
    n.kappa = w * kappa_hz;
    n.gamma = gamma_convention == RateConvention::angular ? w * gamma_hz : gamma_hz;
    n.p_readout = p_readout;
    n.p_projection = p_projection;
    n.t_readout = t_readout_s;
    return n;
}

void RunConfig::finalize() {
    protocol.noise = noise.to_params();
    protocol.validate();
    check_sense_interval(sense.u, sense.v);
    if (sense.samples_per_branch < 0) {
        throw ValidationError("sense.samples_per_branch must be non-negative");
    }
    if (!(wigner.hi > wigner.lo) || wigner.points < 2) {
        throw ValidationError("wigner mesh needs hi > lo and at least 2 points");
    }
    if (analytics.m_min < 1 || analytics.m_max < analytics.m_min || analytics.m_max > 16) {
        throw ValidationError("analytics needs 1 <= m_min <= m_max <= 16");
    }
    for (double a : analytics.alphas) {
        if (!(a > 0 && a < 0.5)) {
            throw ValidationError("analytics.alphas must lie in (0, 1/2)");
        }
    }
    static const std::set<std::string> params{"kerr", "kerr_cq", "kappa", "gamma", "p_readout", "p_projection"};
    if (!params.count(sweep.parameter)) {
        throw ValidationError("sweep.parameter '" + sweep.parameter + "' is not a noise parameter");
    }
    if (output.format != "csv") {
        throw ValidationError("output.format must be csv");
    }
    if (output.precision < 1 || output.precision > 17) {
        throw ValidationError("output.precision must lie in [1, 17]");
    }
    for (const auto &g : sweep_grid()) {
        g.validate();
    }
}

std::vector<NoiseParams> RunConfig::sweep_grid() const {
    std::vector<NoiseParams> grid;
    for (double v : sweep.values) {
        LabNoise n = noise;
        if (sweep.parameter == "kerr") {
            n.kerr_hz = v;
        } else if (sweep.parameter == "kerr_cq") {
            n.kerr_cq_hz = v;
        } else if (sweep.parameter == "kappa") {
            n.kappa_hz = v;
        } else if (sweep.parameter == "gamma") {
            n.gamma_hz = v;
        } else if (sweep.parameter == "p_readout") {
            n.p_readout = v;
        } else if (sweep.parameter == "p_projection") {
            n.p_projection = v;
        }
        grid.push_back(n.to_params());
    }
    return grid;
}

namespace {

struct ParseError {
    std::string what;
};

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string &s) {
    double x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(x)) {
        throw ParseError{"expected a finite number, got '" + s + "'"};
    }
    return x;
}

long to_long(const std::string &s) {
    long x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError{"expected an integer, got '" + s + "'"};
    }
    return x;
}

int to_int(const std::string &s) {
    long x = to_long(s);
    if (x < -(1L << 30) || x > (1L << 30)) {
        throw ParseError{"integer out of range: '" + s + "'"};
    }
    return static_cast<int>(x);
}

bool to_bool(const std::string &s) {
    if (s == "true" || s == "1" || s == "yes") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        return false;
    }
    throw ParseError{"expected true or false, got '" + s + "'"};
}

std::vector<double> to_list(const std::string &s) {
    std::vector<double> out;
    if (trim(s).empty()) {
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(to_double(trim(item)));
    }
    return out;
}

std::string num(double x) { return format_number(x, 17); }

std::string list(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + num(v[i]);
    }
    return s;
}

struct Key {
    std::string section;
    std::string name;
    std::function<void(RunConfig &, const std::string &)> set;
    std::function<std::string(const RunConfig &)> get;
};

const std::vector<Key> &keys() {
    static const std::vector<Key> k = {
        {"protocol", "mode", [](RunConfig &c, const std::string &v) { c.protocol.mode = mode_from_string(v); },
         [](const RunConfig &c) { return to_string(c.protocol.mode); }},
        {"protocol", "M", [](RunConfig &c, const std::string &v) { c.protocol.rounds = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.protocol.rounds); }},
        {"protocol", "initial",
         [](RunConfig &c, const std::string &v) { c.protocol.initial.kind = state_kind_from_string(v); },
         [](const RunConfig &c) { return to_string(c.protocol.initial.kind); }},
        {"protocol", "alpha_re",
         [](RunConfig &c, const std::string &v) { c.protocol.initial.alpha.real(to_double(v)); },
         [](const RunConfig &c) { return num(c.protocol.initial.alpha.real()); }},
        {"protocol", "alpha_im",
         [](RunConfig &c, const std::string &v) { c.protocol.initial.alpha.imag(to_double(v)); },
         [](const RunConfig &c) { return num(c.protocol.initial.alpha.imag()); }},
        {"protocol", "delta", [](RunConfig &c, const std::string &v) { c.protocol.initial.delta = to_double(v); },
         [](const RunConfig &c) { return num(c.protocol.initial.delta); }},
        {"protocol", "squeezed_axis",
         [](RunConfig &c, const std::string &v) {
             if (v != "q" && v != "p") {
                 throw ParseError{"squeezed_axis must be q or p"};
             }
             c.protocol.initial.axis = v == "q" ? Axis::q : Axis::p;
         },
         [](const RunConfig &c) { return std::string(c.protocol.initial.axis == Axis::q ? "q" : "p"); }},
        {"protocol", "photon_number", [](RunConfig &c, const std::string &v) { c.protocol.initial.n = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.protocol.initial.n); }},
        {"protocol", "adaptive", [](RunConfig &c, const std::string &v) { c.protocol.adaptive = to_bool(v); },
         [](const RunConfig &c) { return std::string(c.protocol.adaptive ? "true" : "false"); }},
        {"protocol", "seed",
         [](RunConfig &c, const std::string &v) {
             long s = to_long(v);
             if (s < 0) {
                 throw ParseError{"seed must be non-negative"};
             }
             c.protocol.seed = static_cast<std::uint64_t>(s);
         },
         [](const RunConfig &c) { return std::to_string(c.protocol.seed); }},
        {"protocol", "sample", [](RunConfig &c, const std::string &v) { c.sample = to_bool(v); },
         [](const RunConfig &c) { return std::string(c.sample ? "true" : "false"); }},
        {"protocol", "n_samples", [](RunConfig &c, const std::string &v) { c.protocol.n_samples = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.protocol.n_samples); }},
        {"protocol", "dim", [](RunConfig &c, const std::string &v) { c.protocol.dim = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.protocol.dim); }},
        {"protocol", "edge_tol", [](RunConfig &c, const std::string &v) { c.protocol.edge_tol = to_double(v); },
         [](const RunConfig &c) { return num(c.protocol.edge_tol); }},
        {"protocol", "integrator",
         [](RunConfig &c, const std::string &v) {
             if (v != "rk45" && v != "exact") {
                 throw ParseError{"integrator must be rk45 or exact"};
             }
             c.protocol.integrator = v == "rk45" ? Integrator::rk45 : Integrator::exact;
         },
         [](const RunConfig &c) { return std::string(c.protocol.integrator == Integrator::rk45 ? "rk45" : "exact"); }},
        {"protocol", "audit", [](RunConfig &c, const std::string &v) { c.protocol.audit = to_bool(v); },
         [](const RunConfig &c) { return std::string(c.protocol.audit ? "true" : "false"); }},
        {"protocol", "prune", [](RunConfig &c, const std::string &v) { c.protocol.prune = to_double(v); },
         [](const RunConfig &c) { return num(c.protocol.prune); }},

        {"noise", "chi_over_2pi_hz", [](RunConfig &c, const std::string &v) { c.noise.chi_hz = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.chi_hz); }},
        {"noise", "kerr_over_2pi_hz", [](RunConfig &c, const std::string &v) { c.noise.kerr_hz = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.kerr_hz); }},
        {"noise", "kerr_cq_over_2pi_hz",
         [](RunConfig &c, const std::string &v) { c.noise.kerr_cq_hz = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.kerr_cq_hz); }},
        {"noise", "kappa_over_2pi_hz", [](RunConfig &c, const std::string &v) { c.noise.kappa_hz = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.kappa_hz); }},
        {"noise", "gamma_hz", [](RunConfig &c, const std::string &v) { c.noise.gamma_hz = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.gamma_hz); }},
        {"noise", "gamma_convention",
         [](RunConfig &c, const std::string &v) {
             if (v != "angular" && v != "plain") {
                 throw ParseError{"gamma_convention must be angular or plain"};
             }
             c.noise.gamma_convention = v == "angular" ? RateConvention::angular : RateConvention::plain;
         },
         [](const RunConfig &c) {
             return std::string(c.noise.gamma_convention == RateConvention::angular ? "angular" : "plain");
         }},
        {"noise", "p_readout", [](RunConfig &c, const std::string &v) { c.noise.p_readout = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.p_readout); }},
        {"noise", "p_projection", [](RunConfig &c, const std::string &v) { c.noise.p_projection = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.p_projection); }},
        {"noise", "t_readout_s", [](RunConfig &c, const std::string &v) { c.noise.t_readout_s = to_double(v); },
         [](const RunConfig &c) { return num(c.noise.t_readout_s); }},

        {"sense", "u", [](RunConfig &c, const std::string &v) { c.sense.u = to_double(v); },
         [](const RunConfig &c) { return num(c.sense.u); }},
        {"sense", "v", [](RunConfig &c, const std::string &v) { c.sense.v = to_double(v); },
         [](const RunConfig &c) { return num(c.sense.v); }},
        {"sense", "samples_per_branch",
         [](RunConfig &c, const std::string &v) { c.sense.samples_per_branch = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.sense.samples_per_branch); }},

        {"wigner", "lo", [](RunConfig &c, const std::string &v) { c.wigner.lo = to_double(v); },
         [](const RunConfig &c) { return num(c.wigner.lo); }},
        {"wigner", "hi", [](RunConfig &c, const std::string &v) { c.wigner.hi = to_double(v); },
         [](const RunConfig &c) { return num(c.wigner.hi); }},
        {"wigner", "points", [](RunConfig &c, const std::string &v) { c.wigner.points = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.wigner.points); }},

        {"analytics", "m_min", [](RunConfig &c, const std::string &v) { c.analytics.m_min = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.analytics.m_min); }},
        {"analytics", "m_max", [](RunConfig &c, const std::string &v) { c.analytics.m_max = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.analytics.m_max); }},
        {"analytics", "alphas", [](RunConfig &c, const std::string &v) { c.analytics.alphas = to_list(v); },
         [](const RunConfig &c) { return list(c.analytics.alphas); }},

        {"sweep", "parameter", [](RunConfig &c, const std::string &v) { c.sweep.parameter = v; },
         [](const RunConfig &c) { return c.sweep.parameter; }},
        {"sweep", "values", [](RunConfig &c, const std::string &v) { c.sweep.values = to_list(v); },
         [](const RunConfig &c) { return list(c.sweep.values); }},

        {"output", "dir", [](RunConfig &c, const std::string &v) { c.output.dir = v; },
         [](const RunConfig &c) { return c.output.dir; }},
        {"output", "format", [](RunConfig &c, const std::string &v) { c.output.format = v; },
         [](const RunConfig &c) { return c.output.format; }},
        {"output", "precision", [](RunConfig &c, const std::string &v) { c.output.precision = to_int(v); },
         [](const RunConfig &c) { return std::to_string(c.output.precision); }},
    };
    return k;
}

void log_conversions(RunConfig &cfg) {
    const NoiseParams n = cfg.protocol.noise;
    auto line = [&](const char *name, double hz, double rad) {
        cfg.log.push_back(std::string(name) + ": " + format_number(hz, 6) + " Hz -> " + format_number(rad, 6) +
                          " rad/s");
    };
    line("chi", cfg.noise.chi_hz, n.chi);
    if (cfg.noise.kerr_hz != 0) {
        line("kerr", cfg.noise.kerr_hz, n.kerr);
    }
    if (cfg.noise.kerr_cq_hz != 0) {
        line("kerr_cq", cfg.noise.kerr_cq_hz, n.kerr_cq);
    }
    if (cfg.noise.kappa_hz != 0) {
        line("kappa", cfg.noise.kappa_hz, n.kappa);
    }
    if (cfg.noise.gamma_hz != 0) {
        cfg.log.push_back("gamma: " + format_number(cfg.noise.gamma_hz, 6) + " Hz -> " + format_number(n.gamma, 6) +
                          " 1/s (" +
                          (cfg.noise.gamma_convention == RateConvention::angular ? "angular" : "plain") +
                          " convention)");
    }
    cfg.log.push_back("t_gate: " + format_number(n.t_gate(), 6) + " s");
}

}  // namespace

RunConfig parse_config(std::istream &in, const std::string &name) {
    std::map<std::string, const Key *> index;
    std::set<std::string> sections;
    for (const auto &k : keys()) {
        index[k.section + "." + k.name] = &k;
        sections.insert(k.section);
    }
    RunConfig cfg;
    std::set<std::string> seen;
    std::string section;
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string &msg) {
        throw ValidationError(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail("malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!sections.count(section)) {
                fail("unknown section [" + section + "]");
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail("expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            fail("key '" + key + "' outside any section");
        }
        const std::string full = section + "." + key;
        auto it = index.find(full);
        if (it == index.end()) {
            fail("unknown key '" + key + "' in [" + section + "]");
        }
        if (!seen.insert(full).second) {
            fail("duplicate key '" + full + "'");
        }
        try {
            it->second->set(cfg, value);
        } catch (const ParseError &e) {
            fail(full + ": " + e.what);
        } catch (const ValidationError &e) {
            fail(full + ": " + e.what());
        }
    }
    try {
        cfg.finalize();
    } catch (const ValidationError &e) {
        throw ValidationError(name + ": " + e.what());
    }
    log_conversions(cfg);
    return cfg;
}

RunConfig parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file '" + path + "'");
    }
    return parse_config(in, path);
}

RunConfig parse_config_string(const std::string &text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string emit_config(const RunConfig &cfg) {
    std::ostringstream out;
    std::string section;
    for (const auto &k : keys()) {
        if (k.section != section) {
            if (!section.empty()) {
                out << "\n";
            }
            section = k.section;
            out << "[" << section << "]\n";
        }
        out << k.name << " = " << k.get(cfg) << "\n";
    }
    return out.str();
}

bool same_settings(const RunConfig &a, const RunConfig &b) {
    const auto &p = a.protocol;
    const auto &q = b.protocol;
    bool proto = p.mode == q.mode && p.rounds == q.rounds && p.initial.kind == q.initial.kind &&
                 p.initial.alpha == q.initial.alpha && p.initial.delta == q.initial.delta &&
                 p.initial.axis == q.initial.axis && p.initial.n == q.initial.n && p.adaptive == q.adaptive &&
                 p.seed == q.seed && p.n_samples == q.n_samples && p.dim == q.dim && p.edge_tol == q.edge_tol &&
                 p.integrator == q.integrator && p.audit == q.audit && p.prune == q.prune;
    const auto &m = p.noise;
    const auto &n = q.noise;
    bool noise = m.chi == n.chi && m.kerr == n.kerr && m.kerr_cq == n.kerr_cq && m.kappa == n.kappa &&
                 m.gamma == n.gamma && m.p_readout == n.p_readout && m.p_projection == n.p_projection &&
                 m.t_readout == n.t_readout;
    return proto && noise && a.command == b.command && a.sample == b.sample && a.noise == b.noise &&
           a.sense == b.sense && a.wigner == b.wigner && a.analytics == b.analytics && a.sweep == b.sweep &&
           a.output == b.output;
}

}  // namespace gridsense
