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


#include "infft/testdata.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "infft/windows.hpp"

namespace infft {
namespace {

struct Ellipse {
  double intensity, a, b, x0, y0, phi_deg;
};

// Toft's modified intensities, as used by MATLAB's phantom().
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

}  // namespace

CoefficientVector PhantomImage::as_coefficients() const {
  const FrequencyBox box(2, M);
  ComplexVector v(pixels.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pixels[i];
  return CoefficientVector(box, std::move(v));
}

PhantomImage shepp_logan(int M) {
  if (M < 8 || M % 2 != 0) throw DomainError("phantom size must be even and >= 8");
  PhantomImage img;
  img.M = M;
  img.pixels.assign(static_cast<std::size_t>(M) * M, 0.0);
  for (int p = 0; p < M; ++p) {
    const double y = -2.0 * (-0.5 + (p + 0.5) / M);
    for (int q = 0; q < M; ++q) {
      const double x = 2.0 * (-0.5 + (q + 0.5) / M);
      double acc = 0.0;
      for (const Ellipse& e : kSheppLogan) {
        const double phi = e.phi_deg * std::numbers::pi / 180.0;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const double dx = x - e.x0;
        const double dy = y - e.y0;
        const double u = (dx * c + dy * s) / e.a;
        const double v = (-dx * s + dy * c) / e.b;
        if (u * u + v * v <= 1.0) acc += e.intensity;
      }
      img.pixels[static_cast<std::size_t>(p) * M + q] = acc;
    }
  }
  return img;
}

TriangularPulse::TriangularPulse(int d, int M, int b) : d_(d), M_(M), b_(b) {
  const FrequencyBox check(d, M);
  (void)check;
  if (b < 1) throw DomainError("pulse width must be positive");
  if (b > M / 2) throw DomainError("pulse bandwidth exceeds the frequency box");
}

double TriangularPulse::hat(const Point& v) const {
  double r = 1.0;
  for (int t = 0; t < d_; ++t) r *= std::max(0.0, 1.0 - std::abs(v[t]) / b_);
  return r;
}

double TriangularPulse::value(const Point& x) const {
  double r = 1.0;
  for (int t = 0; t < d_; ++t) {
    const double s = sinc(b_ * std::numbers::pi * x[t]);
    r *= b_ * s * s;
  }
  return r;
}

CoefficientVector TriangularPulse::coefficients() const {
  const FrequencyBox box(d_, M_);
  CoefficientVector c(box);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const MultiIndex k = box.delinearize(i);
    c.values[i] = hat({static_cast<double>(k[0]), static_cast<double>(k[1]),
                       static_cast<double>(k[2])});
  }
  return c;
}

SampleVector TriangularPulse::samples(const SamplingSet& sampling) const {
  if (sampling.dim() != d_) throw DomainError("dimension mismatch");
  SampleVector f(sampling.size());
  for (std::size_t j = 0; j < sampling.size(); ++j) f.values[j] = value(sampling[j]);
  return f;
}

}  // namespace infft
