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


#include "infft/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace infft {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::size_t cols) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV file '" + path + "'");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cols && cells.size() != cols) throw IoError("malformed CSV row in '" + path + "'");
    std::vector<double> r;
    for (const auto& c : cells) r.push_back(parse_double(c));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("not a number: '" + s + "'");
  }
  return v;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw DomainError("CSV row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
  std::string out;
  auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += r[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

void CsvWriter::save(const std::string& path) const { write_text(str(), path); }

void write_points_csv(const SamplingSet& sampling, const std::string& path) {
  std::vector<std::string> header;
  for (int t = 0; t < sampling.dim(); ++t) header.push_back("x" + std::to_string(t + 1));
  CsvWriter csv(header);
  for (const auto& p : sampling.points()) {
    std::vector<std::string> row;
    for (int t = 0; t < sampling.dim(); ++t) row.push_back(format_double(p[t]));
    csv.add_row(std::move(row));
  }
  csv.save(path);
}

SamplingSet read_points_csv(const std::string& path) {
  const auto rows = read_numeric_csv(path, 0);
  if (rows.empty()) throw IoError("no points in '" + path + "'");
  const std::size_t d = rows.front().size();
  if (d < 1 || d > kMaxDim) throw IoError("points must have 1..3 columns");
  std::vector<Point> pts;
  for (const auto& r : rows) {
    if (r.size() != d) throw IoError("ragged point file");
    Point p{0.0, 0.0, 0.0};
    std::copy(r.begin(), r.end(), p.begin());
    pts.push_back(p);
  }
  return SamplingSet(static_cast<int>(d), std::move(pts));
}

void write_weights_csv(const ComplexVector& w, const std::string& path) {
  CsvWriter csv({"re", "im"});
  for (const auto& z : w) csv.add_row({format_double(z.real()), format_double(z.imag())});
  csv.save(path);
}

ComplexVector read_weights_csv(const std::string& path) {
  ComplexVector w;
  for (const auto& r : read_numeric_csv(path, 2)) w.emplace_back(r[0], r[1]);
  return w;
}

std::string residual_report_json(const WeightVector& w) {
  nlohmann::json j;
  j["method"] = to_string(w.method);
  j["n"] = w.size();
  j["epsilon"] = std::isfinite(w.epsilon) ? nlohmann::json(w.epsilon) : nlohmann::json();
  j["cg_iterations"] = w.cg_iterations;
  j["converged"] = w.converged;
  j["fallback"] = w.fallback;
  j["route"] = to_string(w.route);
  j["system"] = w.system;
  return j.dump();
}

void write_pgm(const std::vector<double>& field, int rows, int cols,
               const std::string& path) {
  if (rows < 1 || cols < 1 ||
      field.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw DomainError("PGM field shape mismatch");
  }
  double mx = 0.0;
  for (double v : field) {
    if (std::isfinite(v)) mx = std::max(mx, v);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "P5\n" << cols << ' ' << rows << "\n255\n";
  for (double v : field) {
    double s = mx > 0.0 && std::isfinite(v) ? v / mx : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * s))));
  }
  if (!out) throw IoError("failed to write '" + path + "'");
}

void write_raw_f64(const std::vector<double>& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (double v : field) {
    const auto u = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xffu);
    out.write(b, 8);
  }
  if (!out) throw IoError("failed to write '" + path + "'");
}

std::vector<double> read_raw_f64(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<double> out;
  unsigned char b[8];
  while (in.read(reinterpret_cast<char*>(b), 8)) {
    std::uint64_t u = 0;
    for (int i = 7; i >= 0; --i) u = (u << 8) | b[i];
    out.push_back(std::bit_cast<double>(u));
  }
  if (in.gcount() != 0) throw IoError("raw float file has a partial record");
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed to write '" + path + "'");
}

}  // namespace infft
