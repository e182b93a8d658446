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


#include "infft/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

namespace infft {

struct CubeFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

CubeFft::CubeFft(int d, int n) : d_(d), n_(n), size_(1) {
  if (d < 1 || d > kMaxDim) throw DomainError("FFT dimension must be 1..3");
  if (n < 1) throw DomainError("FFT length must be positive");
  for (int t = 0; t < d; ++t) size_ *= static_cast<std::size_t>(n);
  int dims[kMaxDim] = {n, n, n};
  ComplexVector scratch(size_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_ = std::make_unique<Plans>();
  plans_->forward = fftw_plan_dft(d, dims, buf, buf, FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(d, dims, buf, buf, FFTW_BACKWARD, flags);
  if (!plans_->forward || !plans_->backward) {
    throw NumericalBreakdown("FFTW planning failed");
  }
}

CubeFft::~CubeFft() = default;

void CubeFft::execute(FftSign sign, ComplexVector& data) const {
  if (data.size() != size_) throw DomainError("FFT buffer size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(sign == FftSign::Forward ? plans_->forward
                                            : plans_->backward,
                   buf, buf);
}

ComplexVector direct_dft(int d, int n, const ComplexVector& data,
                         FftSign sign) {
  const FrequencyBox shape(d, 2);  // only validates d
  (void)shape;
  std::size_t size = 1;
  for (int t = 0; t < d; ++t) size *= static_cast<std::size_t>(n);
  if (data.size() != size) throw DomainError("DFT buffer size mismatch");
  const double s = static_cast<double>(static_cast<int>(sign));
  ComplexVector roots(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    roots[r] = std::polar(1.0, s * 2.0 * std::numbers::pi * r / n);
  }
  auto digits = [&](std::size_t idx, int* out) {
    for (int t = d - 1; t >= 0; --t) {
      out[t] = static_cast<int>(idx % static_cast<std::size_t>(n));
      idx /= static_cast<std::size_t>(n);
    }
  };
  ComplexVector result(size);
  int l[kMaxDim] = {0, 0, 0};
  int k[kMaxDim] = {0, 0, 0};
  for (std::size_t a = 0; a < size; ++a) {
    digits(a, l);
    Complex acc = 0.0;
    for (std::size_t b = 0; b < size; ++b) {
      digits(b, k);
      long phase = 0;
      for (int t = 0; t < d; ++t) phase += static_cast<long>(k[t]) * l[t];
      acc += data[b] * roots[static_cast<std::size_t>(phase % n)];
    }
    result[a] = acc;
  }
  return result;
}

}  // namespace infft
