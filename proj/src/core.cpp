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

#include "infft/core.hpp"

#include <cmath>
#include <string>

namespace infft {

FrequencyBox::FrequencyBox(int d, int M) : d_(d), M_(M), size_(1) {
  if (d < 1 || d > kMaxDim) {
    throw DomainError("dimension must be 1, 2 or 3, got " + std::to_string(d));
  }
  if (M < 2 || M % 2 != 0) {
    throw DomainError("bandwidth must be even and >= 2, got " +
                      std::to_string(M));
  }
  for (int t = 0; t < d; ++t) size_ *= static_cast<std::size_t>(M);
}

bool FrequencyBox::contains(const MultiIndex& k) const {
  for (int t = 0; t < d_; ++t) {
    if (k[t] < -M_ / 2 || k[t] >= M_ / 2) return false;
  }
  return true;
}

std::size_t FrequencyBox::linearize(const MultiIndex& k) const {
  if (!contains(k)) throw DomainError("multi-index outside the frequency box");
  std::size_t index = 0;
  for (int t = 0; t < d_; ++t) {
    index = index * static_cast<std::size_t>(M_) +
            static_cast<std::size_t>(k[t] + M_ / 2);
  }
  return index;
}

MultiIndex FrequencyBox::delinearize(std::size_t index) const {
  if (index >= size_) throw DomainError("linear index outside the box");
  MultiIndex k{0, 0, 0};
  for (int t = d_ - 1; t >= 0; --t) {
    k[t] = static_cast<int>(index % static_cast<std::size_t>(M_)) - M_ / 2;
    index /= static_cast<std::size_t>(M_);
  }
  return k;
}

double wrap_torus(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite coordinate");
  double y = x - std::floor(x + 0.5);
  // floor can round x + 0.5 up for x just below 1/2
  if (y >= 0.5) y -= 1.0;
  if (y < -0.5) y += 1.0;
  return y;
}

Point wrap_torus(const Point& x, int d) {
  Point y{0.0, 0.0, 0.0};
  for (int t = 0; t < d; ++t) y[t] = wrap_torus(x[t]);
  return y;
}

SamplingSet::SamplingSet(int d, std::vector<Point> points)
    : d_(d), points_(std::move(points)) {
  if (d < 1 || d > kMaxDim) throw DomainError("dimension must be 1, 2 or 3");
  if (points_.empty()) throw DomainError("sampling set must not be empty");
  for (auto& p : points_) p = wrap_torus(p, d);
}

CoefficientVector::CoefficientVector(const FrequencyBox& b, ComplexVector v)
    : box(b), values(std::move(v)) {
  if (values.size() != box.size()) {
    throw DomainError("coefficient count does not match the frequency box");
  }
}

double norm(std::span<const Complex> v, Norm p) {
  double acc = 0.0;
  if (p == Norm::Max) {
    for (const auto& z : v) acc = std::max(acc, std::abs(z));
    return acc;
  }
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

double relative_error(std::span<const Complex> approx,
                      std::span<const Complex> exact, Norm p) {
  if (approx.size() != exact.size()) throw DomainError("length mismatch");
  const double denom = norm(exact, p);
  if (!(denom > 0.0)) throw DomainError("reference vector has zero norm");
  ComplexVector diff(approx.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = approx[i] - exact[i];
  return norm(diff, p) / denom;
}

double relative_error(const CoefficientVector& approx,
                      const CoefficientVector& exact, Norm p) {
  if (!(approx.box == exact.box)) throw DomainError("box mismatch");
  return relative_error(approx.values, exact.values, p);
}

}  // namespace infft
