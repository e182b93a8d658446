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
#include <functional>
#include <vector>

#include "infft/core.hpp"

namespace infft {

struct CgConfig {
  double tol = 1e-14;
  // 0 selects 4 * system dimension.
  std::size_t maxit = 0;
};

struct CgResult {
  ComplexVector x;
  double residual = 0.0;  // true ||Hx - b|| / ||b|| at exit
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> history;  // recursive relative residual per iteration
};

using LinearOperator = std::function<ComplexVector(const ComplexVector&)>;

/// Plain conjugate gradients for a Hermitian positive semidefinite H.
CgResult cg_solve(const LinearOperator& apply, const ComplexVector& rhs,
                  const CgConfig& cfg = {});

/// Minimum-norm least squares solution via SVD, truncating singular values
/// below 1e-12 * sigma_max.
/// The numerical rank is stored in *rank when given.
Eigen::VectorXcd dense_lstsq(const Eigen::MatrixXcd& A,
                             const Eigen::VectorXcd& b,
                             Eigen::Index* rank = nullptr);
Eigen::VectorXd dense_lstsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            Eigen::Index* rank = nullptr);

/// Moore-Penrose pseudoinverse; rows + cols must not exceed 2048.
Eigen::MatrixXcd dense_pinv(const Eigen::MatrixXcd& A);

constexpr std::size_t kPinvGuard = 2048;
constexpr double kSvdCutoff = 1e-12;

}  // namespace infft
