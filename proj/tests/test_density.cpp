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

#include <algorithm>
#include <cmath>

#include "infft/density.hpp"
#include "test_util.hpp"

using namespace infft;

namespace {

SamplingSet equispaced(int d, int n) {
  GridRequest r;
  r.kind = GridKind::Equispaced;
  r.d = d;
  r.n = n;
  return generate_grid(r);
}

// max_k |sum_j w_j e^{2 pi i k x_j} - delta_k| over I_2M by a double loop.
double brute_epsilon(const ComplexVector& w, const SamplingSet& s, int M2) {
  const FrequencyBox box(s.dim(), M2);
  double e = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const MultiIndex k = box.delinearize(i);
    Complex acc = 0.0;
    bool zero = true;
    for (int t = 0; t < s.dim(); ++t) zero = zero && k[t] == 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      double ph = 0.0;
      for (int t = 0; t < s.dim(); ++t) ph += k[t] * s[j][t];
      acc += w[j] * std::polar(1.0, 2.0 * M_PI * ph);
    }
    e = std::max(e, std::abs(acc - (zero ? 1.0 : 0.0)));
  }
  return e;
}

Eigen::MatrixXcd explicit_matrix(const SamplingSet& s, int M) {
  const int N = static_cast<int>(s.size());
  Eigen::MatrixXcd A(N, M);
  for (int j = 0; j < N; ++j)
    for (int k = -M / 2; k < M / 2; ++k)
      A(j, k + M / 2) = std::polar(1.0, 2.0 * M_PI * k * s[j][0]);
  return A;
}

}  // namespace

TEST_CASE("weight method names round trip") {
  for (const char* n : {"exact", "voronoi", "uniform", "pinv", "wcf", "pcf", "relaxed", "sinc"})
    CHECK(std::string(to_string(parse_weight_method(n))) == n);
  CHECK_THROWS_AS(parse_weight_method("magic"), DomainError);
}

TEST_CASE("exact weights on an equispaced grid are 1/N") {
  const int M = 8;
  for (int N : {16, 20}) {
    const SamplingSet s = equispaced(1, N);
    const WeightVector w = exact_weights(s, FrequencyBox(1, M));
    REQUIRE(w.epsilon <= 1e-12);
    for (const auto& v : w.values) REQUIRE(std::abs(v - 1.0 / N) < 1e-12);
  }
  const SamplingSet s2 = equispaced(2, 16);
  const WeightVector w2 = exact_weights(s2, FrequencyBox(2, 8));
  REQUIRE(w2.epsilon <= 1e-12);
  for (const auto& v : w2.values) REQUIRE(std::abs(v - 1.0 / 256) < 1e-13);
}

TEST_CASE("residual_epsilon examples and brute-force oracle") {
  const SamplingSet s = equispaced(1, 16);
  CHECK(residual_epsilon(ComplexVector(16), s, FrequencyBox(1, 16), TransformRoute::Ndft) ==
        Catch::Approx(1.0));
  Rng rng(3);
  for (int d = 1; d <= 2; ++d) {
    const SamplingSet r = testing::random_points(rng, d, 40);
    const ComplexVector w = testing::random_vector(rng, 40);
    const double lib = residual_epsilon(w, r, FrequencyBox(d, 8), TransformRoute::Ndft);
    REQUIRE(std::abs(lib - brute_epsilon(w, r, 8)) < 1e-12);
  }
}

TEST_CASE("exact weights make the quadrature exact on random points") {
  Rng rng(4);
  const SamplingSet s = testing::random_points(rng, 1, 128);
  const FrequencyBox box(1, 32);
  const WeightVector w = exact_weights(s, box);
  CHECK(w.system.find("second") != std::string::npos);
  REQUIRE(w.epsilon <= 1e-10);
  REQUIRE(brute_epsilon(w.values, s, 64) <= 1e-10);

  // A* W A = I follows from exactness over I_2M
  const Eigen::MatrixXcd A = explicit_matrix(s, 32);
  Eigen::VectorXcd wv(128);
  for (int j = 0; j < 128; ++j) wv(j) = w.values[j];
  const Eigen::MatrixXcd H = A.adjoint() * wv.asDiagonal() * A;
  const double dev = (H - Eigen::MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff();
  REQUIRE(dev <= 1e-9);
}

TEST_CASE("exact weights agree between NDFT and NFFT matvec routes") {
  Rng rng(5);
  const SamplingSet s = testing::random_points(rng, 2, 400);
  const FrequencyBox box(2, 8);
  DensityOptions slow;
  slow.ndft_limit = 1u << 30;
  DensityOptions fast;
  fast.ndft_limit = 1;
  const WeightVector a = exact_weights(s, box, slow);
  const WeightVector b = exact_weights(s, box, fast);
  CHECK(a.route == TransformRoute::Ndft);
  CHECK(b.route == TransformRoute::Nfft);
  REQUIRE(a.epsilon <= 1e-10);
  REQUIRE(b.epsilon <= 1e-10);
  REQUIRE(testing::max_abs_diff(a.values, b.values) <= 1e-9 * norm(a.values, Norm::Max));
}

TEST_CASE("underdetermined exact weights use the first kind system") {
  Rng rng(6);
  const SamplingSet s = testing::random_points(rng, 1, 60);
  CgConfig cg;
  cg.maxit = 200;
  const WeightVector w = exact_weights(s, FrequencyBox(1, 64), {cg, 4096, 2048});
  CHECK(w.system.find("first") != std::string::npos);
  CHECK(w.size() == 60);
  for (const auto& v : w.values) REQUIRE(std::isfinite(std::abs(v)));
}

TEST_CASE("weighted adjoint reconstructs trigonometric polynomials") {
  Rng rng(7);
  const SamplingSet s = testing::random_points(rng, 1, 128);
  const FrequencyBox box(1, 32);
  ComplexVector fhat(32);
  for (auto& z : fhat) z = rng.uniform(1.0, 10.0);
  const CoefficientVector f(box, fhat);
  const SampleVector samples = ndft_forward(f, s);
  const WeightVector w = exact_weights(s, box);
  const FourierOperator op(s, box, TransformRoute::Ndft);
  const CoefficientVector h = infft_density(op, w, samples);
  REQUIRE(relative_error(h, f, Norm::L2) <= 1e-8);
  const NfftPlan plan(s, box, accurate_window(32));
  REQUIRE(relative_error(infft_density(plan, w, samples), f, Norm::L2) <= 1e-8);
  const CoefficientVector zero = infft_density(op, w, SampleVector(128));
  CHECK(norm(zero.values, Norm::Max) == 0.0);
  CHECK_THROWS_AS(infft_density(op, w, SampleVector(5)), DomainError);
}

TEST_CASE("aat_entry matches the direct kernel sum") {
  Rng rng(8);
  for (int d = 1; d <= 3; ++d) {
    const SamplingSet s = testing::random_points(rng, d, 5);
    CHECK(std::abs(aat_entry(s, 6, 2, 2) - std::pow(6.0, d)) < 1e-12);
    for (std::size_t j = 0; j < 5; ++j) {
      for (std::size_t h = 0; h < 5; ++h) {
        Point diff{0, 0, 0};
        for (int t = 0; t < d; ++t) diff[t] = s[j][t] - s[h][t];
        REQUIRE(std::abs(aat_entry(s, 6, j, h) - testing::kernel_sum(diff, d, 6)) < 1e-10);
      }
    }
  }
  const SamplingSet s = testing::random_points(rng, 2, 7);
  const Eigen::MatrixXcd G = aat_matrix(s, 4);
  CHECK((G - G.adjoint()).norm() < 1e-12);
}

TEST_CASE("baseline weights examples") {
  const SamplingSet eq = equispaced(1, 12);
  const FrequencyBox box(1, 4);
  for (WeightMethod m : {WeightMethod::Voronoi1D, WeightMethod::Uniform}) {
    const WeightVector w = baseline_weights(m, eq, box);
    for (const auto& v : w.values) REQUIRE(std::abs(v - 1.0 / 12) < 1e-14);
  }
  Rng rng(9);
  CHECK_THROWS_AS(baseline_weights(WeightMethod::Voronoi1D, testing::random_points(rng, 2, 4),
                                   FrequencyBox(2, 4)),
                  DomainError);

  // Voronoi on a sorted circle: half gaps to each neighbour
  const SamplingSet v(1, {{-0.4, 0, 0}, {0.0, 0, 0}, {0.2, 0, 0}});
  const WeightVector vw = baseline_weights(WeightMethod::Voronoi1D, v, FrequencyBox(1, 2));
  CHECK(vw.values[0].real() == Catch::Approx(0.5 * (0.4 + 0.4)));
  CHECK(vw.values[1].real() == Catch::Approx(0.5 * (0.4 + 0.2)));
  CHECK(vw.values[2].real() == Catch::Approx(0.5 * (0.2 + 0.4)));
}

TEST_CASE("Pinv weights match an independent pseudoinverse") {
  Rng rng(10);
  const SamplingSet s = testing::random_points(rng, 1, 6);
  const WeightVector w = baseline_weights(WeightMethod::Pinv, s, FrequencyBox(1, 4));
  const Eigen::MatrixXcd A = explicit_matrix(s, 4);
  const Eigen::MatrixXcd P = A * A.completeOrthogonalDecomposition().pseudoInverse();
  for (int j = 0; j < 6; ++j) REQUIRE(std::abs(w.values[j] - P(j, j) / 4.0) < 1e-10);
}

TEST_CASE("Wcf and Pcf agree between dense and matrix-free routes") {
  Rng rng(11);
  GridRequest r;
  r.kind = GridKind::Jittered;
  r.d = 2;
  r.n = 12;  // N < |I_2M - 1| keeps S nonsingular
  r.seed = 4;
  const SamplingSet s = generate_grid(r);
  const FrequencyBox box(2, 8);
  DensityOptions dense;
  DensityOptions free;
  free.dense_limit = 1;
  free.cg.tol = 1e-13;
  for (WeightMethod m : {WeightMethod::Wcf, WeightMethod::Pcf}) {
    const WeightVector a = baseline_weights(m, s, box, dense);
    const WeightVector b = baseline_weights(m, s, box, free);
    CHECK(a.system != b.system);
    REQUIRE(testing::max_abs_diff(a.values, b.values) <= 1e-8 * norm(a.values, Norm::Max));
  }
}

TEST_CASE("Pcf weights equal the closed-form row sums") {
  Rng rng(12);
  const SamplingSet s = testing::random_points(rng, 1, 20);
  const WeightVector w = baseline_weights(WeightMethod::Pcf, s, FrequencyBox(1, 6));
  for (std::size_t j = 0; j < 20; ++j) {
    double row = 0.0;
    for (std::size_t h = 0; h < 20; ++h) {
      row += std::norm(testing::kernel_sum({s[j][0] - s[h][0], 0, 0}, 1, 6));
    }
    REQUIRE(std::abs(w.values[j] - 6.0 / row) < 1e-12 * std::abs(w.values[j]));
  }
}

TEST_CASE("sinc system weights come close to exact weights") {
  // Fewer points than |I_2M|, so neither system reaches roundoff.
  Rng rng(13);
  const FrequencyBox box(1, 8);
  for (int N : {6, 8, 10}) {
    for (int rep = 0; rep < 3; ++rep) {
      const SamplingSet s = testing::random_points(rng, 1, N);
      const WeightVector ex = exact_weights(s, box);
      const WeightVector sw = baseline_weights(WeightMethod::SincSystem, s, box);
      REQUIRE(sw.epsilon <= 10.0 * ex.epsilon);
    }
  }
  CHECK_THROWS_AS(
      baseline_weights(WeightMethod::SincSystem, testing::random_points(rng, 2, 5000),
                       FrequencyBox(2, 32)),
      CapacityError);
}

TEST_CASE("condition bound report") {
  const SamplingSet eq = equispaced(1, 16);
  const FrequencyBox box(1, 8);
  const WeightVector w = exact_weights(eq, box);
  const ConditionReport r = condition_bound_check(eq, box, w.values);
  CHECK(r.kappa2 == Catch::Approx(1.0).margin(1e-10));
  CHECK(r.holds);

  Rng rng(14);
  const ComplexVector junk = testing::random_vector(rng, 16);
  const ConditionReport v = condition_bound_check(eq, box, junk);
  CHECK(v.epsilon * 8 >= 1.0);
  CHECK(v.holds);
  CHECK(std::isinf(v.bound));
  CHECK_THROWS_AS(condition_bound_check(testing::random_points(rng, 2, 10), FrequencyBox(2, 32),
                                        ComplexVector(10)),
                  CapacityError);
}
