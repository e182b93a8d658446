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


#include "infft/windows.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace infft {

int oversampled_size(double sigma, int M) {
  if (!(sigma >= 1.0) || !std::isfinite(sigma)) {
    throw DomainError("oversampling factor must be >= 1");
  }
  if (M < 2 || M % 2 != 0) throw DomainError("bandwidth must be even");
  const double inner = std::ceil(sigma * M);
  return 2 * static_cast<int>(std::ceil(inner / 2.0));
}

WindowSpec::WindowSpec(WindowKind kind, int M, double sigma, int m)
    : kind_(kind), M_(M), sigma_(sigma), m_(m),
      Msigma_(oversampled_size(sigma, M)) {
  if (m < 1) throw DomainError("truncation parameter m must be positive");
  // The spline must fit on the oversampled grid without overlapping itself.
  // The Dirichlet window only enters through index sets, where wrapped
  // duplicates are merged, so sigma = 1, m = 4, M = 8 is allowed.
  if (kind == WindowKind::BSpline && 2 * m + 1 > Msigma_) {
    throw DomainError("window support 2m+1 exceeds the oversampled grid");
  }
}

double WindowSpec::hat_1d(int k) const {
  if (kind_ == WindowKind::Dirichlet) return 1.0;
  const double s = sinc(std::numbers::pi * k / Msigma_);
  return std::pow(s, 2 * m_) / Msigma_;
}

const char* to_string(WindowKind kind) {
  return kind == WindowKind::BSpline ? "bspline" : "dirichlet";
}

WindowKind parse_window_kind(const std::string& name) {
  if (name == "bspline") return WindowKind::BSpline;
  if (name == "dirichlet") return WindowKind::Dirichlet;
  throw DomainError("unknown window kind '" + name + "'");
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

void bspline_shifts(int n, double t, std::vector<double>& out) {
  // Cox-de Boor on the integer knots, all n nonzero pieces at once.
  out.assign(static_cast<std::size_t>(n), 0.0);
  out[0] = 1.0;
  for (int k = 2; k <= n; ++k) {
    for (int i = k - 1; i >= 0; --i) {
      const double x = t + i;
      const double left = i < k - 1 ? out[i] : 0.0;
      const double right = i > 0 ? out[i - 1] : 0.0;
      out[i] = (x * left + (k - x) * right) / (k - 1);
    }
  }
}

double bspline(int n, double x) {
  const double s = x + 0.5 * n;
  if (s <= 0.0 || s >= n) return 0.0;
  const double fl = std::floor(s);
  std::vector<double> vals;
  bspline_shifts(n, s - fl, vals);
  return vals[static_cast<std::size_t>(fl)];
}

double window_hat(const WindowSpec& spec, const FrequencyBox& box,
                  const MultiIndex& k) {
  if (box.bandwidth() != spec.bandwidth()) {
    throw DomainError("window and box bandwidths differ");
  }
  if (!box.contains(k)) throw DomainError("frequency outside I_M");
  double v = 1.0;
  for (int t = 0; t < box.dim(); ++t) v *= spec.hat_1d(k[t]);
  return v;
}

double window_spatial(const WindowSpec& spec, const Point& u, int d) {
  if (spec.kind() != WindowKind::BSpline) {
    throw UnsupportedError("the Dirichlet window has no truncated spatial form");
  }
  const Point w = wrap_torus(u, d);
  double v = 1.0;
  for (int t = 0; t < d; ++t) {
    const double y = spec.oversampled() * w[t];
    if (std::abs(y) > spec.cutoff()) return 0.0;
    v *= bspline(2 * spec.cutoff(), y);
  }
  return v;
}

Complex dirichlet_factor(int M, double t) {
  // 1-periodic for even M, so reduce first to keep sin(pi t) away from zero
  // crossings other than t = 0.
  const double r = wrap_torus(t);
  if (r == 0.0) return Complex(M, 0.0);
  const double pi = std::numbers::pi;
  const double ratio = std::sin((M - 1) * pi * r) / std::sin(pi * r);
  return Complex(ratio, 0.0) + std::polar(1.0, -M * pi * r);
}

}  // namespace infft
