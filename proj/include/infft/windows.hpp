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

namespace infft {

enum class WindowKind { BSpline, Dirichlet };

/// Mσ = 2 * ceil(ceil(sigma * M) / 2).
int oversampled_size(double sigma, int M);

/// Window parameters for one bandwidth M.
///
/// The B-spline window is w(x) = B_{2m}(Msigma * x) with the centered
/// cardinal B-spline of order 2m. The Dirichlet window is given by its
/// Fourier coefficients only (all ones on I_M).
class WindowSpec {
 public:
  WindowSpec(WindowKind kind, int M, double sigma, int m);

  WindowKind kind() const { return kind_; }
  int bandwidth() const { return M_; }
  double sigma() const { return sigma_; }
  int cutoff() const { return m_; }
  int oversampled() const { return Msigma_; }

  /// One-dimensional factor of the Fourier coefficient; any integer k.
  double hat_1d(int k) const;

 private:
  WindowKind kind_;
  int M_;
  double sigma_;
  int m_;
  int Msigma_;
};

const char* to_string(WindowKind kind);
WindowKind parse_window_kind(const std::string& name);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Centered cardinal B-spline of order n at x, supported on [-n/2, n/2].
double bspline(int n, double x);

/// Values N_n(t + i), i = 0..n-1, of the uncentered cardinal B-spline of
/// order n (support [0, n]) for t in [0, 1).
void bspline_shifts(int n, double t, std::vector<double>& out);

/// ŵ(k) for k in I_M.
double window_hat(const WindowSpec& spec, const FrequencyBox& box,
                  const MultiIndex& k);

/// Periodized truncated window w̃_m(u).
double window_spatial(const WindowSpec& spec, const Point& u, int d);

/// sum_{k=-M/2}^{M/2-1} e^{2 pi i k t} in closed form.
Complex dirichlet_factor(int M, double t);

}  // namespace infft
