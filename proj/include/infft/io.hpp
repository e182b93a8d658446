// Copyright 2026 The infft Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <vector>

#include "infft/core.hpp"
#include "infft/density.hpp"

namespace infft {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

/// Simple CSV table with a header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_points_csv(const SamplingSet& sampling, const std::string& path);
SamplingSet read_points_csv(const std::string& path);

/// Columns (re, im), row j for point j.
void write_weights_csv(const ComplexVector& w, const std::string& path);
ComplexVector read_weights_csv(const std::string& path);

/// One JSON object per line describing a weight computation.
std::string residual_report_json(const WeightVector& w);

/// 8-bit binary PGM of a rows x cols field scaled linearly from [0, max].
void write_pgm(const std::vector<double>& field, int rows, int cols,
               const std::string& path);
/// Raw little-endian 64-bit floats, row-major.
void write_raw_f64(const std::vector<double>& field, const std::string& path);
std::vector<double> read_raw_f64(const std::string& path);

void write_text(const std::string& text, const std::string& path);

}  // namespace infft
