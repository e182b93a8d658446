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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace infft {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Signed multi-index and point on the torus. Only the first d entries are
// meaningful; the rest are kept at zero.
using MultiIndex = std::array<int, 3>;
using Point = std::array<double, 3>;

constexpr int kMaxDim = 3;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The index cube I_M = Z^d ∩ [-M/2, M/2)^d with M even.
///
/// Multi-indices are linearized row-major with axis 0 slowest:
/// index = sum_t (k_t + M/2) * M^(d-1-t).
class FrequencyBox {
 public:
  FrequencyBox(int d, int M);

  int dim() const { return d_; }
  int bandwidth() const { return M_; }
  std::size_t size() const { return size_; }

  bool contains(const MultiIndex& k) const;
  std::size_t linearize(const MultiIndex& k) const;
  MultiIndex delinearize(std::size_t index) const;

  /// The box with bandwidth 2M, used for the augmented exactness condition.
  FrequencyBox doubled() const { return FrequencyBox(d_, 2 * M_); }

  friend bool operator==(const FrequencyBox&, const FrequencyBox&) = default;

 private:
  int d_;
  int M_;
  std::size_t size_;
};

/// Map each component to its representative in [-1/2, 1/2).
Point wrap_torus(const Point& x, int d);
double wrap_torus(double x);

/// N points on the torus [-1/2, 1/2)^d, stored wrapped.
class SamplingSet {
 public:
  SamplingSet(int d, std::vector<Point> points);

  int dim() const { return d_; }
  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t j) const { return points_[j]; }
  const std::vector<Point>& points() const { return points_; }

 private:
  int d_;
  std::vector<Point> points_;
};

/// Fourier coefficients in linearization order of their box.
struct CoefficientVector {
  FrequencyBox box;
  ComplexVector values;

  explicit CoefficientVector(const FrequencyBox& b)
      : box(b), values(b.size(), Complex{0.0, 0.0}) {}
  CoefficientVector(const FrequencyBox& b, ComplexVector v);
};

/// Function values aligned with a SamplingSet.
struct SampleVector {
  ComplexVector values;

  SampleVector() = default;
  explicit SampleVector(std::size_t n) : values(n, Complex{0.0, 0.0}) {}
  explicit SampleVector(ComplexVector v) : values(std::move(v)) {}
  std::size_t size() const { return values.size(); }
};

enum class Norm { L2, Max };

double norm(std::span<const Complex> v, Norm p);

/// ||approx - exact||_p / ||exact||_p.
double relative_error(std::span<const Complex> approx,
                      std::span<const Complex> exact, Norm p);
double relative_error(const CoefficientVector& approx,
                      const CoefficientVector& exact, Norm p);

}  // namespace infft
