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

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

#include "infft/core.hpp"
#include "infft/fft.hpp"
#include "infft/windows.hpp"

namespace infft {

/// f_j = sum_{k in I_M} f̂_k e^{2 pi i k.x_j}, by direct summation.
SampleVector ndft_forward(const CoefficientVector& coeffs,
                          const SamplingSet& sampling);

/// h_k = sum_j f_j e^{-2 pi i k.x_j}, by direct summation.
CoefficientVector ndft_adjoint(const SampleVector& samples,
                               const SamplingSet& sampling,
                               const FrequencyBox& box);

/// Dense A with A_{jk} = e^{2 pi i k.x_j}; columns in box order.
Eigen::MatrixXcd fourier_matrix(const SamplingSet& sampling,
                                const FrequencyBox& box);

/// Grid offsets of one coordinate on the oversampled grid.
///
/// The admissible shifts are l = floor(Msigma*x + m) - i for i < count,
/// i.e. all l with Msigma*x - l in [-m, m]; frac is the fractional part of
/// Msigma*x + m, so that Msigma*x - l + m = frac + i.
struct AxisSupport {
  int top;
  int count;
  double frac;
};

AxisSupport axis_support(double x, int Msigma, int m);

/// Map a signed index to its DFT bin in [0, n).
inline int dft_bin(int l, int n) {
  const int r = l % n;
  return r < 0 ? r + n : r;
}

/// The F D and D* F* stages shared by the NFFT and the optimized spreader.
///
/// Holds D = diag(1 / (|I_Msigma| ŵ(k))) and the zero-padding map from I_M
/// into the oversampled DFT grid.
class OversampledStage {
 public:
  OversampledStage(const FrequencyBox& box, const WindowSpec& window);

  const FrequencyBox& box() const { return box_; }
  const WindowSpec& window() const { return window_; }
  int grid_length() const { return window_.oversampled(); }
  std::size_t grid_size() const { return fft_->size(); }
  const std::vector<double>& deconvolve() const { return deconvolve_; }
  const std::vector<std::size_t>& bins() const { return bins_; }

  /// g = F D f̂ on the oversampled grid.
  ComplexVector synthesize(std::span<const Complex> coeffs) const;

  /// h = D* F* g; g is used as scratch.
  ComplexVector analyze(ComplexVector& g) const;

 private:
  FrequencyBox box_;
  WindowSpec window_;
  std::vector<double> deconvolve_;
  std::vector<std::size_t> bins_;
  std::shared_ptr<const CubeFft> fft_;
};

/// Precomputed A ≈ B F D for a fixed point set.
///
/// The spreader B is stored row-compressed; column indices address the
/// oversampled DFT grid in bin order (l mod Msigma per axis) and are
/// ascending within each row.
class NfftPlan {
 public:
  NfftPlan(const SamplingSet& sampling, const FrequencyBox& box,
           const WindowSpec& window);

  const SamplingSet& sampling() const { return sampling_; }
  const FrequencyBox& box() const { return stage_.box(); }
  const WindowSpec& window() const { return stage_.window(); }
  const OversampledStage& stage() const { return stage_; }
  const std::vector<double>& deconvolve() const { return stage_.deconvolve(); }
  int fft_size() const { return stage_.grid_length(); }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& columns() const { return cols_; }
  const std::vector<double>& values() const { return vals_; }

  SampleVector forward(const CoefficientVector& coeffs) const;
  CoefficientVector adjoint(const SampleVector& samples) const;

 private:
  SamplingSet sampling_;
  OversampledStage stage_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

/// B-spline window whose NFFT matches the NDFT to roundoff (sigma = 3,
/// m = 10, shrunk for tiny bandwidths).
WindowSpec accurate_window(int M);

enum class TransformRoute { Ndft, Nfft };

const char* to_string(TransformRoute route);

/// A = (e^{2 pi i k.x_j}) applied either exactly or through an NFFT plan.
class FourierOperator {
 public:
  FourierOperator(const SamplingSet& sampling, const FrequencyBox& box,
                  TransformRoute route);
  FourierOperator(const SamplingSet& sampling, const FrequencyBox& box,
                  const WindowSpec& window);

  TransformRoute route() const { return route_; }
  const FrequencyBox& box() const { return box_; }
  const SamplingSet& sampling() const { return sampling_; }

  ComplexVector forward(const ComplexVector& coeffs) const;
  ComplexVector adjoint(const ComplexVector& samples) const;

 private:
  SamplingSet sampling_;
  FrequencyBox box_;
  TransformRoute route_;
  std::shared_ptr<const NfftPlan> plan_;
};

NfftPlan build_plan(const SamplingSet& sampling, const FrequencyBox& box,
                    const WindowSpec& window);
SampleVector nfft_forward(const NfftPlan& plan, const CoefficientVector& coeffs);
CoefficientVector nfft_adjoint(const NfftPlan& plan, const SampleVector& samples);

}  // namespace infft
