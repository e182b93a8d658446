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


#include "infft/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace infft {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{s 2 pi i k x} for k in I_M, per axis.
void axis_exponentials(double x, int M, double s, Complex* out) {
  for (int k = -M / 2; k < M / 2; ++k) {
    out[k + M / 2] = std::polar(1.0, s * kTwoPi * k * x);
  }
}

void check_dims(const SamplingSet& sampling, const FrequencyBox& box) {
  if (sampling.dim() != box.dim()) {
    throw DomainError("sampling set and frequency box dimensions differ");
  }
}

}  // namespace

SampleVector ndft_forward(const CoefficientVector& coeffs,
                          const SamplingSet& sampling) {
  const FrequencyBox& box = coeffs.box;
  check_dims(sampling, box);
  const int d = box.dim();
  const std::size_t M = static_cast<std::size_t>(box.bandwidth());
  std::vector<Complex> e(kMaxDim * M);
  const Complex* f = coeffs.values.data();
  SampleVector out(sampling.size());
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    for (int t = 0; t < d; ++t) {
      axis_exponentials(sampling[j][t], box.bandwidth(), 1.0, &e[t * M]);
    }
    Complex acc = 0.0;
    if (d == 1) {
      for (std::size_t a = 0; a < M; ++a) acc += e[a] * f[a];
    } else if (d == 2) {
      for (std::size_t a = 0; a < M; ++a) {
        Complex s = 0.0;
        const Complex* row = f + a * M;
        for (std::size_t b = 0; b < M; ++b) s += e[M + b] * row[b];
        acc += e[a] * s;
      }
    } else {
      for (std::size_t a = 0; a < M; ++a) {
        Complex s1 = 0.0;
        for (std::size_t b = 0; b < M; ++b) {
          Complex s2 = 0.0;
          const Complex* row = f + (a * M + b) * M;
          for (std::size_t c = 0; c < M; ++c) s2 += e[2 * M + c] * row[c];
          s1 += e[M + b] * s2;
        }
        acc += e[a] * s1;
      }
    }
    out.values[j] = acc;
  }
  return out;
}

CoefficientVector ndft_adjoint(const SampleVector& samples,
                               const SamplingSet& sampling,
                               const FrequencyBox& box) {
  check_dims(sampling, box);
  if (samples.size() != sampling.size()) {
    throw DomainError("sample count does not match the sampling set");
  }
  const int d = box.dim();
  const std::size_t M = static_cast<std::size_t>(box.bandwidth());
  std::vector<Complex> e(kMaxDim * M);
  CoefficientVector out(box);
  Complex* h = out.values.data();
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    for (int t = 0; t < d; ++t) {
      axis_exponentials(sampling[j][t], box.bandwidth(), -1.0, &e[t * M]);
    }
    const Complex fj = samples.values[j];
    if (d == 1) {
      for (std::size_t a = 0; a < M; ++a) h[a] += fj * e[a];
    } else if (d == 2) {
      for (std::size_t a = 0; a < M; ++a) {
        const Complex s = fj * e[a];
        Complex* row = h + a * M;
        for (std::size_t b = 0; b < M; ++b) row[b] += s * e[M + b];
      }
    } else {
      for (std::size_t a = 0; a < M; ++a) {
        for (std::size_t b = 0; b < M; ++b) {
          const Complex s = fj * e[a] * e[M + b];
          Complex* row = h + (a * M + b) * M;
          for (std::size_t c = 0; c < M; ++c) row[c] += s * e[2 * M + c];
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXcd fourier_matrix(const SamplingSet& sampling,
                                const FrequencyBox& box) {
  check_dims(sampling, box);
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(sampling.size()),
                     static_cast<Eigen::Index>(box.size()));
  for (std::size_t c = 0; c < box.size(); ++c) {
    const MultiIndex k = box.delinearize(c);
    for (std::size_t j = 0; j < sampling.size(); ++j) {
      double phase = 0.0;
      for (int t = 0; t < box.dim(); ++t) phase += k[t] * sampling[j][t];
      A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
          std::polar(1.0, kTwoPi * phase);
    }
  }
  return A;
}

AxisSupport axis_support(double x, int Msigma, int m) {
  const double s = Msigma * x + m;
  const double fl = std::floor(s);
  const double frac = s - fl;
  // An integer offset reaches both ends of [-m, m].
  return {static_cast<int>(fl), 2 * m + (frac == 0.0 ? 1 : 0), frac};
}

OversampledStage::OversampledStage(const FrequencyBox& box,
                                   const WindowSpec& window)
    : box_(box), window_(window) {
  if (window.bandwidth() != box.bandwidth()) {
    throw DomainError("window bandwidth does not match the frequency box");
  }
  const int d = box.dim();
  const int n = window.oversampled();
  fft_ = std::make_shared<const CubeFft>(d, n);
  double grid = 1.0;
  for (int t = 0; t < d; ++t) grid *= n;
  deconvolve_.resize(box.size());
  bins_.resize(box.size());
  for (std::size_t c = 0; c < box.size(); ++c) {
    const MultiIndex k = box.delinearize(c);
    double hat = 1.0;
    std::size_t bin = 0;
    for (int t = 0; t < d; ++t) {
      hat *= window.hat_1d(k[t]);
      bin = bin * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(dft_bin(k[t], n));
    }
    if (!(hat > 0.0)) throw DomainError("window coefficient vanishes on I_M");
    deconvolve_[c] = 1.0 / (grid * hat);
    bins_[c] = bin;
  }
}

ComplexVector OversampledStage::synthesize(
    std::span<const Complex> coeffs) const {
  if (coeffs.size() != box_.size()) {
    throw DomainError("coefficient count does not match the frequency box");
  }
  ComplexVector g(fft_->size(), Complex{0.0, 0.0});
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    g[bins_[c]] = coeffs[c] * deconvolve_[c];
  }
  fft_->execute(FftSign::Backward, g);
  return g;
}

ComplexVector OversampledStage::analyze(ComplexVector& g) const {
  if (g.size() != fft_->size()) throw DomainError("grid size mismatch");
  fft_->execute(FftSign::Forward, g);
  ComplexVector h(box_.size());
  for (std::size_t c = 0; c < h.size(); ++c) {
    h[c] = g[bins_[c]] * deconvolve_[c];
  }
  return h;
}

NfftPlan::NfftPlan(const SamplingSet& sampling, const FrequencyBox& box,
                   const WindowSpec& window)
    : sampling_(sampling), stage_(box, window) {
  if (window.kind() != WindowKind::BSpline) {
    throw UnsupportedError("NFFT plans need a window with a spatial form");
  }
  check_dims(sampling, box);
  const int d = box.dim();
  const int n = window.oversampled();
  const int m = window.cutoff();
  const int order = 2 * m;

  std::vector<std::vector<double>> axis_vals(static_cast<std::size_t>(d));
  std::vector<std::vector<std::size_t>> axis_bins(static_cast<std::size_t>(d));
  std::vector<std::pair<std::size_t, double>> row;

  row_ptr_.reserve(sampling.size() + 1);
  row_ptr_.push_back(0);
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    for (int t = 0; t < d; ++t) {
      const AxisSupport s = axis_support(sampling[j][t], n, m);
      auto& vals = axis_vals[static_cast<std::size_t>(t)];
      auto& bins = axis_bins[static_cast<std::size_t>(t)];
      bspline_shifts(order, s.frac, vals);
      vals.resize(static_cast<std::size_t>(s.count), 0.0);
      bins.resize(static_cast<std::size_t>(s.count));
      for (int i = 0; i < s.count; ++i) {
        bins[static_cast<std::size_t>(i)] =
            static_cast<std::size_t>(dft_bin(s.top - i, n));
      }
    }
    row.clear();
    std::size_t total = 1;
    for (int t = 0; t < d; ++t) total *= axis_bins[t].size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      std::size_t col = 0;
      double v = 1.0;
      std::size_t stride = 1;
      for (int t = d - 1; t >= 0; --t) {
        const std::size_t cnt = axis_bins[t].size();
        const std::size_t i = rest % cnt;
        rest /= cnt;
        col += axis_bins[t][i] * stride;
        v *= axis_vals[t][i];
        stride *= static_cast<std::size_t>(n);
      }
      row.emplace_back(col, v);
    }
    std::sort(row.begin(), row.end());
    for (const auto& [c, v] : row) {
      cols_.push_back(c);
      vals_.push_back(v);
    }
    row_ptr_.push_back(cols_.size());
  }
}

SampleVector NfftPlan::forward(const CoefficientVector& coeffs) const {
  if (!(coeffs.box == box())) throw DomainError("coefficient box mismatch");
  const ComplexVector g = stage_.synthesize(coeffs.values);
  SampleVector out(sampling_.size());
  for (std::size_t j = 0; j < sampling_.size(); ++j) {
    Complex acc = 0.0;
    for (std::size_t p = row_ptr_[j]; p < row_ptr_[j + 1]; ++p) {
      acc += vals_[p] * g[cols_[p]];
    }
    out.values[j] = acc;
  }
  return out;
}

CoefficientVector NfftPlan::adjoint(const SampleVector& samples) const {
  if (samples.size() != sampling_.size()) {
    throw DomainError("sample count does not match the plan");
  }
  ComplexVector g(stage_.grid_size(), Complex{0.0, 0.0});
  for (std::size_t j = 0; j < sampling_.size(); ++j) {
    const Complex fj = samples.values[j];
    for (std::size_t p = row_ptr_[j]; p < row_ptr_[j + 1]; ++p) {
      g[cols_[p]] += vals_[p] * fj;
    }
  }
  return CoefficientVector(box(), stage_.analyze(g));
}

WindowSpec accurate_window(int M) {
  const double sigma = 3.0;
  const int n = oversampled_size(sigma, M);
  return WindowSpec(WindowKind::BSpline, M, sigma, std::min(10, (n - 1) / 2));
}

const char* to_string(TransformRoute route) {
  return route == TransformRoute::Ndft ? "ndft" : "nfft";
}

FourierOperator::FourierOperator(const SamplingSet& sampling,
                                 const FrequencyBox& box, TransformRoute route)
    : sampling_(sampling), box_(box), route_(route) {
  check_dims(sampling, box);
  if (route == TransformRoute::Nfft) {
    plan_ = std::make_shared<const NfftPlan>(sampling, box,
                                             accurate_window(box.bandwidth()));
  }
}

FourierOperator::FourierOperator(const SamplingSet& sampling,
                                 const FrequencyBox& box,
                                 const WindowSpec& window)
    : sampling_(sampling), box_(box), route_(TransformRoute::Nfft),
      plan_(std::make_shared<const NfftPlan>(sampling, box, window)) {}

ComplexVector FourierOperator::forward(const ComplexVector& coeffs) const {
  const CoefficientVector c(box_, coeffs);
  if (plan_) return plan_->forward(c).values;
  return ndft_forward(c, sampling_).values;
}

ComplexVector FourierOperator::adjoint(const ComplexVector& samples) const {
  const SampleVector f(samples);
  if (plan_) return plan_->adjoint(f).values;
  return ndft_adjoint(f, sampling_, box_).values;
}

NfftPlan build_plan(const SamplingSet& sampling, const FrequencyBox& box,
                    const WindowSpec& window) {
  return NfftPlan(sampling, box, window);
}

SampleVector nfft_forward(const NfftPlan& plan,
                          const CoefficientVector& coeffs) {
  return plan.forward(coeffs);
}

CoefficientVector nfft_adjoint(const NfftPlan& plan,
                               const SampleVector& samples) {
  return plan.adjoint(samples);
}

}  // namespace infft
