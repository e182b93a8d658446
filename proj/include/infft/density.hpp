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

#include <cstddef>
#include <limits>
#include <string>

#include "infft/core.hpp"
#include "infft/solvers.hpp"
#include "infft/transforms.hpp"

namespace infft {

enum class WeightMethod {
  ExactQuadrature,
  Voronoi1D,
  Uniform,
  Pinv,
  Wcf,
  Pcf,
  Relaxed,
  SincSystem,
};

const char* to_string(WeightMethod method);
WeightMethod parse_weight_method(const std::string& name);

/// Density compensation factors w_j with the report of how they were found.
struct WeightVector {
  ComplexVector values;
  WeightMethod method = WeightMethod::Uniform;
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  std::size_t cg_iterations = 0;
  bool converged = true;
  bool fallback = false;  // least squares or rank-deficient path taken
  TransformRoute route = TransformRoute::Ndft;
  std::string system;     // which linear system was solved

  std::size_t size() const { return values.size(); }
};

struct DensityOptions {
  CgConfig cg;
  // Transforms over I_2M are exact below this many frequencies.
  std::size_t ndft_limit = 4096;
  // Dense closed-form [AA*] matrices are used up to this many points.
  std::size_t dense_limit = 2048;
};

TransformRoute select_route(const FrequencyBox& box, const DensityOptions& opts);

/// Weights satisfying sum_j w_j e^{2 pi i k.x_j} = delta_{0,k} on I_2M,
/// solved through the normal equations of second kind when |I_2M| <= N and
/// of first kind otherwise.
WeightVector exact_weights(const SamplingSet& sampling, const FrequencyBox& box,
                           const DensityOptions& opts = {});

/// max_{k in I_2M} |sum_j w_j e^{2 pi i k.x_j} - delta_{0,k}|; box is I_2M.
double residual_epsilon(const ComplexVector& w, const SamplingSet& sampling,
                        const FrequencyBox& doubled, TransformRoute route);
double residual_epsilon(const WeightVector& w, const SamplingSet& sampling,
                        const FrequencyBox& doubled,
                        const DensityOptions& opts = {});

/// A* W f through one adjoint transform.
CoefficientVector infft_density(const NfftPlan& plan, const WeightVector& w,
                                const SampleVector& samples);
CoefficientVector infft_density(const FourierOperator& op,
                                const WeightVector& w,
                                const SampleVector& samples);

WeightVector baseline_weights(WeightMethod method, const SamplingSet& sampling,
                              const FrequencyBox& box,
                              const DensityOptions& opts = {});

/// [A A*]_{jh} in closed form.
Complex aat_entry(const SamplingSet& sampling, int M, std::size_t j,
                  std::size_t h);
Complex aat_entry(const Point& xj, const Point& xh, int d, int M);

/// Dense A A* from the closed form.
Eigen::MatrixXcd aat_matrix(const SamplingSet& sampling, int M);

struct ConditionReport {
  double kappa2 = 0.0;
  double epsilon = 0.0;
  double bound = std::numeric_limits<double>::infinity();
  bool holds = false;
};

/// Checks kappa_2(A* W A) <= (1 + eps |I_M|) / (1 - eps |I_M|) on a small
/// instance (|I_M| <= 256, N <= 1024).
ConditionReport condition_bound_check(const SamplingSet& sampling,
                                      const FrequencyBox& box,
                                      const ComplexVector& w);

}  // namespace infft
