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

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "gridsense/analytics.hpp"
#include "gridsense/config.hpp"
#include "gridsense/csv.hpp"

using namespace gridsense;

namespace {

struct Flags {
    std::string config;
    std::string out;
    long seed = -1;
    int dim = 0;
};

RunConfig load(const Flags &f, Command cmd) {
    RunConfig cfg = f.config.empty() ? parse_config_string("") : parse_config_file(f.config);
    cfg.command = cmd;
    if (!f.out.empty()) {
        cfg.output.dir = f.out;
    }
    if (f.seed >= 0) {
        cfg.protocol.seed = static_cast<std::uint64_t>(f.seed);
    }
    if (f.dim > 0) {
        cfg.protocol.dim = f.dim;
    }
    cfg.finalize();
    for (const auto &l : cfg.log) {
        std::cerr << "gridsense: " << l << "\n";
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.output.dir, ec);
    if (ec) {
        throw ValidationError("cannot create output directory '" + cfg.output.dir + "': " + ec.message());
    }
    return cfg;
}

std::string path_in(const RunConfig &cfg, const std::string &file) {
    return (std::filesystem::path(cfg.output.dir) / file).string();
}

RunResult run(const RunConfig &cfg, const RunOptions &opts = {}) {
    return cfg.sample ? sample_trajectories(cfg.protocol, opts) : enumerate(cfg.protocol, opts);
}

void prepare(const RunConfig &cfg) {
    RunResult r = run(cfg);
    const int p = cfg.output.precision;
    write_squeezing(r, path_in(cfg, "squeezing.csv"), p);
    write_rounds(r, path_in(cfg, "rounds.csv"), p);
    write_branches(r, path_in(cfg, "branches.csv"), p);
    write_summary({{"total_prob", r.total_prob},
                   {"dropped_prob", r.dropped},
                   {"final_delta_p", r.final_delta_p()},
                   {"final_delta_q", r.final_delta_q()},
                   {"final_n_mean", r.final_n_mean()},
                   {"audit_evolutions", long(r.audit.evolutions)},
                   {"audit_max_trace_error", r.audit.max_trace_error},
                   {"audit_min_eigenvalue", r.audit.min_eigenvalue}},
                  path_in(cfg, "summary.csv"), p);
}

void wigner_cmd(const RunConfig &cfg) {
    RunResult r = run(cfg);
    const CavityState<double> &st = *r.most_probable;
    Mesh mesh = Mesh::uniform(cfg.wigner.lo, cfg.wigner.hi, cfg.wigner.points);
    Eigen::MatrixXd w = wigner(st, mesh);
    const int p = cfg.output.precision;
    write_wigner(w, mesh, path_in(cfg, "wigner.csv"), p);
    write_summary({{"period_q", wigner_period(w, mesh, Axis::q)},
                   {"period_p", wigner_period(w, mesh, Axis::p)},
                   {"n_mean", mean_photon_number(st)},
                   {"final_n_mean", r.final_n_mean()}},
                  path_in(cfg, "summary.csv"), p);
}

void sense_cmd(const RunConfig &cfg) {
    RunOptions opts;
    opts.keep_states = true;
    RunResult prep = run(cfg, opts);
    SenseOptions so;
    so.samples_per_branch = cfg.sense.samples_per_branch;
    SenseResult s = sense(prep, cfg.sense.u, cfg.sense.v, cfg.protocol, so);
    const int p = cfg.output.precision;
    write_squeezing(prep, path_in(cfg, "squeezing.csv"), p);
    write_sense(s, path_in(cfg, "sense.csv"), p);
    write_summary({{"u", s.u},
                   {"v", s.v},
                   {"mean_u", s.mean_u},
                   {"mean_v", s.mean_v},
                   {"rms_u", s.rms_u},
                   {"rms_v", s.rms_v},
                   {"prepared_delta_p", prep.final_delta_p()},
                   {"prepared_delta_q", prep.final_delta_q()}},
                  path_in(cfg, "summary.csv"), p);
}

void analytics_cmd(const RunConfig &cfg) {
    const int p = cfg.output.precision;
    {
        CsvWriter w(path_in(cfg, "info_curve.csv"), p);
        w.header({"M", "I_acc_bits"});
        for (int m = cfg.analytics.m_min; m <= cfg.analytics.m_max; ++m) {
            w.row({long(m), accessible_information(m)});
        }
    }
    {
        CsvWriter w(path_in(cfg, "msd.csv"), p);
        w.header({"M", "alpha", "v", "msd", "bound", "bias", "variance"});
        for (double a : cfg.analytics.alphas) {
            for (int m = cfg.analytics.m_min; m <= cfg.analytics.m_max; ++m) {
                // Worst case over mesh midpoints inside I.
                const int n = 1 << m;
                double worst_v = 0, worst = -1;
                for (int y = 0; y < n; ++y) {
                    double v = std::sqrt(2 * M_PI) * (-0.5 + (y + 0.5) / n);
                    if (!in_msd_interval(v, a)) {
                        continue;
                    }
                    double d = msd(v, m);
                    if (d > worst) {
                        worst = d;
                        worst_v = v;
                    }
                }
                if (worst < 0) {
                    continue;
                }
                w.row({long(m), a, worst_v, worst, msd_bound(a, n), estimator_bias(worst_v, m),
                       estimator_variance(worst_v, m)});
            }
        }
    }
    write_summary({{"wehrl_bound_bits", wehrl_bound_compass()}}, path_in(cfg, "summary.csv"), p);
}

void sweep_cmd(const RunConfig &cfg) {
    auto rows = sweep(cfg.sweep_grid(), cfg.protocol, cfg.sample);
    CsvWriter w(path_in(cfg, "sweep.csv"), cfg.output.precision);
    w.header({"parameter", "value", "round", "delta_p", "delta_q", "n_mean", "error"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double value = cfg.sweep.values[i];
        if (!rows[i].result) {
            w.row({cfg.sweep.parameter, value, long(-1), 0.0, 0.0, 0.0, std::string("\"") + rows[i].error + "\""});
            continue;
        }
        for (const auto &s : rows[i].result->rounds) {
            w.row({cfg.sweep.parameter, value, long(s.round), s.delta_p, s.delta_q, s.n_mean, std::string("")});
        }
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Grid-state displacement sensing simulator"};
    app.require_subcommand(1);
    Flags flags;
    struct Sub {
        const char *name;
        const char *help;
        Command cmd;
        void (*fn)(const RunConfig &);
    };
    const Sub subs[] = {
        {"prepare", "Run the preparation protocol and write squeezing tables", Command::prepare, prepare},
        {"sense", "Prepare, displace and re-measure", Command::sense, sense_cmd},
        {"analytics", "Closed-form phase estimation statistics", Command::analytics, analytics_cmd},
        {"wigner", "Wigner function of the most probable prepared branch", Command::wigner, wigner_cmd},
        {"sweep", "Repeat the preparation over a noise grid", Command::sweep, sweep_cmd},
    };
    const Sub *chosen = nullptr;
    for (const auto &s : subs) {
        CLI::App *sc = app.add_subcommand(s.name, s.help);
        sc->add_option("--config", flags.config, "INI-style configuration file");
        sc->add_option("--out", flags.out, "Output directory");
        sc->add_option("--seed", flags.seed, "Override the protocol seed");
        sc->add_option("--dim", flags.dim, "Override the Fock dimension");
        sc->callback([&chosen, &s] { chosen = &s; });
    }
    CLI11_PARSE(app, argc, argv);
    try {
        RunConfig cfg = load(flags, chosen->cmd);
        chosen->fn(cfg);
    } catch (const ValidationError &e) {
        std::cerr << "gridsense: error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError &e) {
        std::cerr << "gridsense: numerical error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
