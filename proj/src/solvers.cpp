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


#include "infft/solvers.hpp"

#include <cmath>

namespace infft {
namespace {

// Dot products in fixed index order so repeated runs agree bitwise.
Complex dot(const ComplexVector& a, const ComplexVector& b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm2(const ComplexVector& a) {
  double acc = 0.0;
  for (const auto& z : a) acc += std::norm(z);
  return std::sqrt(acc);
}

template <typename Matrix, typename Vector>
Vector lstsq_impl(const Matrix& A, const Vector& b, Eigen::Index* rank) {
  if (A.rows() != b.size()) throw DomainError("least squares shape mismatch");
  if (rank) *rank = 0;
  if (A.size() == 0) return Vector::Zero(A.cols());
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = kSvdCutoff * (s.size() ? s(0) : 0.0);
  Vector ub = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const bool keep = s(i) > cutoff;
    ub(i) = keep ? ub(i) / s(i) : 0.0;
    if (keep && rank) ++*rank;
  }
  return svd.matrixV() * ub;
}

}  // namespace

CgResult cg_solve(const LinearOperator& apply, const ComplexVector& rhs,
                  const CgConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw DomainError("CG tolerance must be positive");
  const std::size_t n = rhs.size();
  const std::size_t maxit = cfg.maxit ? cfg.maxit : 4 * n;
  CgResult res;
  res.x.assign(n, Complex{0.0, 0.0});
  const double bnorm = norm2(rhs);
  if (!std::isfinite(bnorm)) throw NumericalBreakdown("non-finite right side");
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  ComplexVector r = rhs;
  ComplexVector p = r;
  double rr = bnorm * bnorm;
  while (res.iterations < maxit) {
    const ComplexVector Ap = apply(p);
    if (Ap.size() != n) throw DomainError("operator changed vector length");
    const double pAp = dot(p, Ap).real();
    if (std::isnan(pAp)) throw NumericalBreakdown("NaN in CG iteration");
    if (pAp <= 0.0) break;  // search direction in the null space
    const double alpha = rr / pAp;
    for (std::size_t i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    const double rr_new = dot(r, r).real();
    if (std::isnan(rr_new)) throw NumericalBreakdown("NaN in CG iteration");
    ++res.iterations;
    res.history.push_back(std::sqrt(rr_new) / bnorm);
    if (std::sqrt(rr_new) <= cfg.tol * bnorm) {
      res.converged = true;
      break;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  const ComplexVector Hx = apply(res.x);
  ComplexVector diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = Hx[i] - rhs[i];
  res.residual = norm2(diff) / bnorm;
  if (!std::isfinite(res.residual)) throw NumericalBreakdown("NaN in CG result");
  return res;
}

Eigen::VectorXcd dense_lstsq(const Eigen::MatrixXcd& A,
                             const Eigen::VectorXcd& b, Eigen::Index* rank) {
  return lstsq_impl(A, b, rank);
}

Eigen::VectorXd dense_lstsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            Eigen::Index* rank) {
  return lstsq_impl(A, b, rank);
}

Eigen::MatrixXcd dense_pinv(const Eigen::MatrixXcd& A) {
  if (static_cast<std::size_t>(A.rows() + A.cols()) > kPinvGuard) {
    throw CapacityError("pseudoinverse size guard exceeded");
  }
  if (A.size() == 0) return Eigen::MatrixXcd::Zero(A.cols(), A.rows());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU |
                                             Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = kSvdCutoff * s(0);
  Eigen::VectorXd inv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    inv(i) = s(i) > cutoff ? 1.0 / s(i) : 0.0;
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace infft
