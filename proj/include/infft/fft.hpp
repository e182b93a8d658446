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

#include <memory>

#include "infft/core.hpp"

namespace infft {

enum class FftSign { Forward = -1, Backward = +1 };

/// Unscaled d-variate DFT of size n per axis, in place, bins in natural
/// order 0..n-1 per axis (axis 0 slowest).
///
///   Forward:  y_l = sum_k x_k e^{-2 pi i k.l / n}
///   Backward: y_l = sum_k x_k e^{+2 pi i k.l / n}
///
/// Execution is reentrant; the object may be shared across threads once
/// constructed.
class CubeFft {
 public:
  CubeFft(int d, int n);
  ~CubeFft();
  CubeFft(const CubeFft&) = delete;
  CubeFft& operator=(const CubeFft&) = delete;

  int dim() const { return d_; }
  int length() const { return n_; }
  std::size_t size() const { return size_; }

  void execute(FftSign sign, ComplexVector& data) const;

 private:
  struct Plans;
  int d_;
  int n_;
  std::size_t size_;
  std::unique_ptr<Plans> plans_;
};

/// Reference DFT by direct summation, for oracles.
ComplexVector direct_dft(int d, int n, const ComplexVector& data, FftSign sign);

}  // namespace infft
