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


#include "catch_amalgamated.hpp"

#include "infft/solvers.hpp"
#include "test_util.hpp"

using namespace infft;

namespace {

Eigen::MatrixXcd random_hpd(Rng& rng, int n, double shift) {
  Eigen::MatrixXcd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  Eigen::MatrixXcd H = B.adjoint() * B;
  H.diagonal().array() += shift;
  return H;
}

LinearOperator as_operator(const Eigen::MatrixXcd& H) {
  return [H](const ComplexVector& x) {
    const Eigen::VectorXcd y =
        H * Eigen::Map<const Eigen::VectorXcd>(x.data(), static_cast<Eigen::Index>(x.size()));
    return ComplexVector(y.data(), y.data() + y.size());
  };
}

}  // namespace

TEST_CASE("CG solves Hermitian positive definite systems") {
  Rng rng(1);
  for (int n : {1, 5, 30}) {
    const Eigen::MatrixXcd H = random_hpd(rng, n, 1.0);
    const ComplexVector b = testing::random_vector(rng, n);
    const CgResult r = cg_solve(as_operator(H), b, {1e-12, 0});
    REQUIRE(r.converged);
    REQUIRE(r.residual <= 1e-11);
    REQUIRE(r.iterations <= static_cast<std::size_t>(4 * n));
    const Eigen::VectorXcd x =
        H.ldlt().solve(Eigen::Map<const Eigen::VectorXcd>(b.data(), n));
    for (int i = 0; i < n; ++i) REQUIRE(std::abs(r.x[i] - x(i)) < 1e-8 * x.norm());
  }
}

TEST_CASE("CG identity, zero rhs and iteration cap") {
  Rng rng(2);
  const ComplexVector b = testing::random_vector(rng, 7);
  const CgResult id = cg_solve([](const ComplexVector& x) { return x; }, b);
  CHECK(id.iterations == 1);
  CHECK(testing::max_abs_diff(id.x, b) < 1e-15);

  const CgResult zero = cg_solve([](const ComplexVector& x) { return x; }, ComplexVector(4));
  CHECK(zero.iterations == 0);
  CHECK(zero.converged);

  const Eigen::MatrixXcd H = random_hpd(rng, 40, 1e-3);
  const CgResult capped = cg_solve(as_operator(H), testing::random_vector(rng, 40), {1e-15, 3});
  CHECK(capped.iterations == 3);
  CHECK_FALSE(capped.converged);
  CHECK(capped.history.size() == 3);
}

TEST_CASE("CG reports breakdown on NaN") {
  const LinearOperator bad = [](const ComplexVector& x) {
    ComplexVector y(x.size(), Complex(std::nan(""), 0.0));
    return y;
  };
  CHECK_THROWS_AS(cg_solve(bad, ComplexVector(3, 1.0)), NumericalBreakdown);
}

TEST_CASE("dense least squares returns the minimum norm solution") {
  Eigen::MatrixXcd A(2, 3);
  A << 1, 0, 0, 0, 1, 0;
  Eigen::VectorXcd b(2);
  b << 2, 3;
  Eigen::Index rank = -1;
  const Eigen::VectorXcd x = dense_lstsq(A, b, &rank);
  CHECK(rank == 2);
  CHECK(std::abs(x(0) - 2.0) < 1e-14);
  CHECK(std::abs(x(1) - 3.0) < 1e-14);
  CHECK(std::abs(x(2)) < 1e-14);

  Eigen::MatrixXd R(3, 2);
  R << 1, 1, 1, 1, 1, 1;
  Eigen::VectorXd c(3);
  c << 1, 2, 3;
  const Eigen::VectorXd y = dense_lstsq(R, c, &rank);
  CHECK(rank == 1);
  CHECK(y(0) == Catch::Approx(1.0));
  CHECK(y(1) == Catch::Approx(1.0));
}

TEST_CASE("pseudo-inverse satisfies the Penrose identities") {
  Rng rng(3);
  Eigen::MatrixXcd A(6, 4);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  A.col(3) = A.col(0) + A.col(1);  // rank 3
  const Eigen::MatrixXcd P = dense_pinv(A);
  CHECK((A * P * A - A).norm() < 1e-12);
  CHECK((P * A * P - P).norm() < 1e-12);
  CHECK(((A * P).adjoint() - A * P).norm() < 1e-12);
  CHECK_THROWS_AS(dense_pinv(Eigen::MatrixXcd::Zero(2000, 100)), CapacityError);
}
