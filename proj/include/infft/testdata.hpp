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

#include <vector>

#include "infft/core.hpp"

namespace infft {

/// M x M real image, row-major, pixel (p, q) at index p * M + q.
struct PhantomImage {
  int M = 0;
  std::vector<double> pixels;

  double at(int p, int q) const { return pixels[static_cast<std::size_t>(p) * M + q]; }

  /// Pixel (p, q) becomes the coefficient of k = (p - M/2, q - M/2).
  CoefficientVector as_coefficients() const;
};

/// Shepp-Logan head phantom (modified intensities, 10 ellipses) sampled at
/// pixel centres u = -1/2 + (p + 1/2)/M; row p runs top to bottom.
PhantomImage shepp_logan(int M);

/// Tensorized triangular pulse f̂(v) = prod_t max(0, 1 - |v_t|/b) and its
/// inverse Fourier transform f(x) = b^d prod_t sinc^2(b pi x_t).
class TriangularPulse {
 public:
  TriangularPulse(int d, int M, int b);

  int dim() const { return d_; }
  int bandwidth() const { return M_; }
  int width() const { return b_; }

  double hat(const Point& v) const;
  double value(const Point& x) const;

  /// f̂ sampled on I_M.
  CoefficientVector coefficients() const;
  /// f at each point of the sampling set.
  SampleVector samples(const SamplingSet& sampling) const;

 private:
  int d_;
  int M_;
  int b_;
};

}  // namespace infft
