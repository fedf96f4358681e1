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

#include "gridsense/csv.hpp"

#include <cstdio>

namespace gridsense {

std::string format_number(double x, int precision) {
    if (x == 0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

CsvWriter::CsvWriter(const std::string &path, int precision) : path_(path), out_(path), precision_(precision) {
    if (!out_) {
        throw ValidationError("cannot write '" + path + "'");
    }
}

void CsvWriter::header(const std::vector<std::string> &cols) {
    columns_ = cols.size();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out_ << (i ? "," : "") << cols[i];
    }
    out_ << "\n";
}

void CsvWriter::row(const std::vector<Cell> &cells) {
    if (columns_ && cells.size() != columns_) {
        throw ValidationError("row width does not match the header of '" + path_ + "'");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << (i ? "," : "");
        std::visit(
            [&](const auto &v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) {
                    out_ << format_number(v, precision_);
                } else {
                    out_ << v;
                }
            },
            cells[i]);
    }
    out_ << "\n";
    if (!out_) {
        throw ValidationError("write failed for '" + path_ + "'");
    }
}

void write_squeezing(const RunResult &r, const std::string &path, int precision) {
    CsvWriter w(path, precision);
    w.header({"round", "delta_p", "delta_q"});
    for (const auto &s : r.rounds) {
        w.row({long(s.round), s.delta_p, s.delta_q});
    }
}

void write_rounds(const RunResult &r, const std::string &path, int precision) {
    CsvWriter w(path, precision);
    w.header({"round", "target", "delta_p", "delta_q", "se_p", "se_q", "n_mean", "mass"});
    for (const auto &s : r.rounds) {
        w.row({long(s.round), std::string(s.target ? to_string(*s.target) : "-"), s.delta_p, s.delta_q, s.se_p,
               s.se_q, s.n_mean, s.mass});
    }
}

void write_branches(const RunResult &r, const std::string &path, int precision) {
    CsvWriter w(path, precision);
    w.header({"branch", "outcomes", "prob", "weight", "delta_p", "delta_q", "theta_p", "theta_q", "n_mean"});
    for (std::size_t i = 0; i < r.branches.size(); ++i) {
        const auto &b = r.branches[i];
        std::string bits;
        for (int x : b.record.outcomes) {
            bits += char('0' + x);
        }
        w.row({long(i), bits, b.record.prob, b.weight, b.delta_p, b.delta_q, b.theta_p, b.theta_q, b.n_mean});
    }
}

void write_wigner(const Eigen::MatrixXd &wig, const Mesh &mesh, const std::string &path, int precision) {
    CsvWriter w(path, precision);
    w.header({"q", "p", "w"});
    for (std::size_t i = 0; i < mesh.q.size(); ++i) {
        for (std::size_t j = 0; j < mesh.p.size(); ++j) {
            w.row({mesh.q[i], mesh.p[j], wig(i, j)});
        }
    }
}

void write_sense(const SenseResult &s, const std::string &path, int precision) {
    CsvWriter w(path, precision);
    w.header({"branch", "weight", "u_est", "v_est"});
    for (std::size_t i = 0; i < s.branches.size(); ++i) {
        w.row({long(i), s.branches[i].weight, s.branches[i].u_est, s.branches[i].v_est});
    }
}

void write_summary(const std::vector<std::pair<std::string, Cell>> &rows, const std::string &path, int precision) {
    CsvWriter w(path, precision);
    w.header({"key", "value"});
    for (const auto &[k, v] : rows) {
        w.row({k, v});
    }
}

}  // namespace gridsense
