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

#ifndef GRIDSENSE_CSV_HPP
#define GRIDSENSE_CSV_HPP

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "gridsense/experiments.hpp"

namespace gridsense {

using Cell = std::variant<double, long, std::string>;

class CsvWriter {
   public:
    CsvWriter(const std::string &path, int precision);
    void header(const std::vector<std::string> &cols);
    void row(const std::vector<Cell> &cells);
    const std::string &path() const { return path_; }

   private:
    std::string path_;
    std::ofstream out_;
    int precision_;
    std::size_t columns_ = 0;
};

std::string format_number(double x, int precision);

void write_squeezing(const RunResult &r, const std::string &path, int precision);
void write_rounds(const RunResult &r, const std::string &path, int precision);
void write_branches(const RunResult &r, const std::string &path, int precision);
void write_wigner(const Eigen::MatrixXd &w, const Mesh &mesh, const std::string &path, int precision);
void write_sense(const SenseResult &s, const std::string &path, int precision);
void write_summary(const std::vector<std::pair<std::string, Cell>> &rows, const std::string &path, int precision);

}  // namespace gridsense

#endif
