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
#include <set>
#include <sstream>

#include "infft/density.hpp"
#include "infft/matopt.hpp"
#include "test_util.hpp"

using namespace infft;

namespace {

SamplingSet grid(GridKind k, int d, int n, int R = 0, int T = 0, std::uint64_t seed = 1) {
  GridRequest r;
  r.kind = k;
  r.d = d;
  r.n = n;
  r.R = R;
  r.T = T;
  r.seed = seed;
  return generate_grid(r);
}

int signed_bin(int b, int n) { return b >= n / 2 ? b - n : b; }

// Dense B (N x n) for a d=1 spreader.
Eigen::MatrixXd dense_b(const OptimizedSpreader& s) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.num_points()),
                                            static_cast<Eigen::Index>(s.num_columns()));
  for (std::size_t c = 0; c < s.num_columns(); ++c)
    for (std::size_t p = s.col_ptr()[c]; p < s.col_ptr()[c + 1]; ++p)
      B(s.rows()[p], static_cast<Eigen::Index>(c)) = s.values()[p];
  return B;
}

}  // namespace

TEST_CASE("column index sets on an equispaced grid") {
  const int n = 16, m = 3;
  const SamplingSet s = grid(GridKind::Equispaced, 1, n);
  for (int l = -n / 2; l < n / 2; ++l) {
    REQUIRE(column_index_set(s, n, m, {l, 0, 0}).size() == static_cast<std::size_t>(2 * m + 1));
  }
  CHECK_THROWS_AS(column_index_set(s, n, m, {n / 2, 0, 0}), DomainError);
}

TEST_CASE("column pattern is the transpose of the NFFT row pattern") {
  Rng rng(2);
  const SamplingSet s = testing::random_points(rng, 2, 50);
  const WindowSpec w(WindowKind::BSpline, 8, 2.0, 3);
  const NfftPlan plan(s, FrequencyBox(2, 8), w);
  std::set<std::pair<std::size_t, std::size_t>> rowwise, colwise;
  for (std::size_t j = 0; j < s.size(); ++j)
    for (auto i = plan.row_ptr()[j]; i < plan.row_ptr()[j + 1]; ++i)
      rowwise.insert({j, plan.columns()[i]});
  const ColumnPattern p = column_pattern(s, 16, 3);
  for (std::size_t c = 0; c + 1 < p.col_ptr.size(); ++c)
    for (auto i = p.col_ptr[c]; i < p.col_ptr[c + 1]; ++i) colwise.insert({p.rows[i], c});
  CHECK(rowwise == colwise);

  // spot-check against the per-column query
  for (std::size_t c : {0u, 17u, 100u, 255u}) {
    const MultiIndex l{signed_bin(static_cast<int>(c / 16), 16),
                       signed_bin(static_cast<int>(c % 16), 16), 0};
    const auto rows = column_index_set(s, 16, 3, l);
    REQUIRE(rows.size() == p.col_ptr[c + 1] - p.col_ptr[c]);
    for (std::size_t a = 0; a < rows.size(); ++a) REQUIRE(rows[a] == p.rows[p.col_ptr[c] + a]);
  }
}

TEST_CASE("polar grids leave the corner columns empty") {
  const SamplingSet s = grid(GridKind::Polar, 2, 0, 16, 32);
  const int n = 32;
  CHECK(column_index_set(s, n, 2, {-n / 2, -n / 2, 0}).empty());
  CHECK_FALSE(column_index_set(s, n, 2, {0, 0, 0}).empty());
}

TEST_CASE("gram matrix examples") {
  Rng rng(3);
  const SamplingSet s = testing::random_points(rng, 2, 6);
  const Eigen::MatrixXcd one = gram_matrix(s, 6, {4});
  CHECK(std::abs(one(0, 0) - 36.0) < 1e-12);
  const std::vector<std::size_t> rows{0, 2, 5};
  const Eigen::MatrixXcd G = gram_matrix(s, 6, rows);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Point diff{s[rows[a]][0] - s[rows[b]][0], s[rows[a]][1] - s[rows[b]][1], 0};
      REQUIRE(std::abs(G(a, b) - testing::kernel_sum(diff, 2, 6)) < 1e-10);
    }
  }
  const Eigen::MatrixXcd Gall = gram_matrix(s, 6, {0, 1, 2, 3, 4, 5});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Gall);
  CHECK(es.eigenvalues().minCoeff() >= -1e-8 * 36);
}

TEST_CASE("right-hand sides match the definition") {
  const WindowSpec dir(WindowKind::Dirichlet, 8, 2.0, 2);
  const SamplingSet on(2, {{3.0 / 16, -5.0 / 16, 0}});
  const Eigen::VectorXcd v0 = rhs_v(on, dir, {3, -5, 0}, {0});
  CHECK(std::abs(v0(0) - 64.0) < 1e-12);
  CHECK(rhs_v(on, dir, {3, -5, 0}, {}).size() == 0);

  Rng rng(4);
  const SamplingSet s = testing::random_points(rng, 2, 5);
  const WindowSpec bs(WindowKind::BSpline, 8, 2.0, 2);
  const FrequencyBox box(2, 8);
  const MultiIndex l{2, -7, 0};
  const Eigen::VectorXcd v = rhs_v(s, bs, l, {0, 1, 2, 3, 4});
  for (int j = 0; j < 5; ++j) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const MultiIndex k = box.delinearize(i);
      const double ph = k[0] * (s[j][0] - l[0] / 16.0) + k[1] * (s[j][1] - l[1] / 16.0);
      acc += window_hat(bs, box, k) * std::polar(1.0, 2.0 * M_PI * ph);
    }
    REQUIRE(std::abs(v(j) - acc) < 1e-10);
  }
}

TEST_CASE("optimized columns solve the real least squares problem") {
  Rng rng(5);
  const SamplingSet s = testing::random_points(rng, 1, 6);
  const FrequencyBox box(1, 4);
  const WindowSpec w(WindowKind::BSpline, 4, 1.0, 1);
  REQUIRE(w.oversampled() == 4);
  const OptimizedSpreader sp = optimize_spreader(s, box, w);
  const int n = 4;
  for (std::size_t c = 0; c < sp.num_columns(); ++c) {
    const int l = signed_bin(static_cast<int>(c), n);
    const auto b0 = sp.col_ptr()[c], b1 = sp.col_ptr()[c + 1];
    const auto r = static_cast<Eigen::Index>(b1 - b0);
    double fnorm2 = 0.0;
    for (int k = -2; k < 2; ++k) fnorm2 += std::pow(w.hat_1d(k), 2);
    if (r == 0) {
      REQUIRE(sp.epsilon[c] == Catch::Approx(fnorm2));
      continue;
    }
    // stacked real system [Re H; Im H] b = [Re f; Im f]
    Eigen::MatrixXd H(8, r);
    Eigen::VectorXd f(8);
    for (int k = -2; k < 2; ++k) {
      const Complex fk = w.hat_1d(k) * std::polar(1.0, -2.0 * M_PI * k * l / n);
      f(k + 2) = fk.real();
      f(k + 6) = fk.imag();
      for (Eigen::Index a = 0; a < r; ++a) {
        const Complex h = std::polar(1.0, -2.0 * M_PI * k * s[sp.rows()[b0 + a]][0]);
        H(k + 2, a) = h.real();
        H(k + 6, a) = h.imag();
      }
    }
    const Eigen::VectorXd b = H.completeOrthogonalDecomposition().solve(f);
    for (Eigen::Index a = 0; a < r; ++a) REQUIRE(std::abs(sp.values()[b0 + a] - b(a)) < 1e-9);
    REQUIRE(sp.epsilon[c] == Catch::Approx((H * b - f).squaredNorm()).margin(1e-10));
  }
}

TEST_CASE("optimized inverse is exact on an equispaced Dirichlet instance") {
  const int M = 16;
  const SamplingSet s = grid(GridKind::Equispaced, 1, M);
  const FrequencyBox box(1, M);
  const WindowSpec w(WindowKind::Dirichlet, M, 1.0, 4);
  const OptimizedSpreader sp = optimize_spreader(s, box, w);
  Rng rng(6);
  const CoefficientVector f(box, testing::random_vector(rng, M));
  const CoefficientVector h = infft_opt(sp, w, ndft_forward(f, s));
  REQUIRE(relative_error(h, f, Norm::L2) <= 1e-10);
  REQUIRE(frobenius_deviation(s, box, sp) <= 1e-9);
}

TEST_CASE("optimized inverse and the inverse adjoint equal their dense factorizations") {
  Rng rng(7);
  const int M = 8, N = 20;
  const SamplingSet s = testing::random_points(rng, 1, N);
  const FrequencyBox box(1, M);
  const WindowSpec w(WindowKind::BSpline, M, 2.0, 2);
  const OptimizedSpreader sp = optimize_spreader(s, box, w);
  const int n = w.oversampled();
  const Eigen::MatrixXd B = dense_b(sp);
  // C = D* F* restricted to I_M, column c is grid bin c
  Eigen::MatrixXcd C(M, n);
  for (int k = -M / 2; k < M / 2; ++k)
    for (int c = 0; c < n; ++c)
      C(k + M / 2, c) = std::polar(1.0, -2.0 * M_PI * k * signed_bin(c, n) / n) /
                        (n * window_hat(w, box, {k, 0, 0}));

  const ComplexVector fv = testing::random_vector(rng, N);
  const Eigen::VectorXcd ref = C * (B.transpose().cast<Complex>() *
                                    Eigen::Map<const Eigen::VectorXcd>(fv.data(), N));
  const CoefficientVector h = infft_opt(sp, w, SampleVector(fv));
  for (int k = 0; k < M; ++k) REQUIRE(std::abs(h.values[k] - ref(k)) < 1e-12 * ref.norm());

  const ComplexVector hv = testing::random_vector(rng, M);
  const Eigen::VectorXcd ref2 =
      B.cast<Complex>() * (C.adjoint() * Eigen::Map<const Eigen::VectorXcd>(hv.data(), M));
  const SampleVector g = inverse_adjoint_nfft(sp, w, CoefficientVector(box, hv));
  for (int j = 0; j < N; ++j) REQUIRE(std::abs(g.values[j] - ref2(j)) < 1e-12 * ref2.norm());

  CHECK(norm(infft_opt(sp, w, SampleVector(N)).values, Norm::Max) == 0.0);
  CHECK(norm(inverse_adjoint_nfft(sp, w, CoefficientVector(box)).values, Norm::Max) == 0.0);
  CHECK_THROWS_AS(infft_opt(sp, w, SampleVector(N + 1)), DomainError);
  CHECK_THROWS_AS(infft_opt(sp, WindowSpec(WindowKind::BSpline, M, 2.0, 3), SampleVector(fv)),
                  DomainError);
}

TEST_CASE("optimized inverse is linear in the samples") {
  Rng rng(8);
  const SamplingSet s = testing::random_points(rng, 2, 150);
  const FrequencyBox box(2, 8);
  const WindowSpec w(WindowKind::BSpline, 8, 2.0, 2);
  const OptimizedSpreader sp = optimize_spreader(s, box, w);
  const ComplexVector a = testing::random_vector(rng, 150), b = testing::random_vector(rng, 150);
  const Complex alpha(0.3, -1.2);
  ComplexVector c(150);
  for (int j = 0; j < 150; ++j) c[j] = a[j] + alpha * b[j];
  const ComplexVector ha = infft_opt(sp, w, SampleVector(a)).values;
  const ComplexVector hb = infft_opt(sp, w, SampleVector(b)).values;
  const ComplexVector hc = infft_opt(sp, w, SampleVector(c)).values;
  for (std::size_t k = 0; k < ha.size(); ++k)
    REQUIRE(std::abs(hc[k] - ha[k] - alpha * hb[k]) < 1e-12 * norm(hc, Norm::Max));
}

TEST_CASE("error bound of the optimized spreader") {
  Rng rng(9);
  for (int d = 1; d <= 2; ++d) {
    const int M = d == 1 ? 16 : 8;
    const SamplingSet s = testing::random_points(rng, d, d == 1 ? 40 : 200);
    const FrequencyBox box(d, M);
    const WindowSpec w(WindowKind::BSpline, M, 2.0, 3);
    const OptimizedSpreader sp = optimize_spreader(s, box, w);
    double inv_hat2 = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i)
      inv_hat2 += std::pow(window_hat(w, box, box.delinearize(i)), -2);
    for (int rep = 0; rep < 5; ++rep) {
      const CoefficientVector f(box, testing::random_vector(rng, box.size()));
      const CoefficientVector h = infft_opt(sp, w, ndft_forward(f, s));
      ComplexVector diff(box.size());
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = h.values[i] - f.values[i];
      const double lhs = std::pow(norm(diff, Norm::L2), 2);
      const double rhs = sp.report.max_epsilon * inv_hat2 * std::pow(norm(f.values, Norm::L2), 2);
      REQUIRE(lhs <= rhs * (1.0 + 1e-8) + 1e-24);
    }
  }
}

TEST_CASE("sparsity is preserved by the optimization") {
  Rng rng(10);
  const SamplingSet s = testing::random_points(rng, 2, 120);
  const WindowSpec w(WindowKind::BSpline, 8, 2.0, 2);
  const OptimizedSpreader sp = optimize_spreader(s, FrequencyBox(2, 8), w);
  std::vector<int> per_row(120, 0);
  for (auto r : sp.rows()) ++per_row[r];
  for (int c : per_row) REQUIRE(c <= 25);
}

TEST_CASE("Frobenius deviation matches a dense product oracle") {
  Rng rng(11);
  const SamplingSet s = testing::random_points(rng, 2, 30);
  const FrequencyBox box(2, 4);
  const NfftPlan plan(s, box, WindowSpec(WindowKind::BSpline, 4, 2.0, 2));
  const Eigen::MatrixXcd A = fourier_matrix(s, box);
  Eigen::MatrixXcd P(30, 16);
  for (int c = 0; c < 16; ++c) {
    ComplexVector e(16);
    e[c] = 1.0;
    const ComplexVector col = plan.forward(CoefficientVector(box, e)).values;
    for (int j = 0; j < 30; ++j) P(j, c) = col[j];
  }
  const double ref = (A.adjoint() * P - Eigen::MatrixXcd::Identity(16, 16)).norm();
  CHECK(frobenius_deviation(s, box, plan) == Catch::Approx(ref).epsilon(1e-10));
  CHECK_THROWS_AS(frobenius_deviation(testing::random_points(rng, 2, 5000), FrequencyBox(2, 32),
                                      plan),
                  CapacityError);
}

TEST_CASE("optimization lowers the Frobenius deviation on a modified polar grid") {
  const SamplingSet s = grid(GridKind::ModifiedPolar, 2, 0, 16, 32);
  const FrequencyBox box(2, 12);
  const WindowSpec bs(WindowKind::BSpline, 12, 2.0, 4);
  const WindowSpec dir(WindowKind::Dirichlet, 12, 2.0, 4);
  const double n = frobenius_deviation(s, box, NfftPlan(s, box, bs));
  const double n_opt = frobenius_deviation(s, box, optimize_spreader(s, box, bs));
  const double n_dir = frobenius_deviation(s, box, optimize_spreader(s, box, dir));
  CHECK(n_opt < n);
  CHECK(n_dir < n);
}

TEST_CASE("inverse adjoint recovers samples on an equispaced grid") {
  for (int M : {16, 32}) {
    const SamplingSet s = grid(GridKind::Equispaced, 1, M);
    const FrequencyBox box(1, M);
    const WindowSpec w(WindowKind::Dirichlet, M, 1.0, 4);
    const OptimizedSpreader sp = optimize_spreader(s, box, w);
    Rng rng(12);
    const SampleVector f(testing::random_vector(rng, s.size()));
    const SampleVector g = inverse_adjoint_nfft(sp, w, ndft_adjoint(f, s, box));
    REQUIRE(relative_error(g.values, f.values, Norm::L2) <= 1e-10);
  }
}

TEST_CASE("inverse adjoint solves the adjoint system on jittered grids") {
  // N > |I_M|: h does not determine f, so check A* g = h instead.
  for (int M : {8, 16, 32}) {
    const SamplingSet s = grid(GridKind::Jittered, 1, 2 * M, 0, 0, 3);
    const FrequencyBox box(1, M);
    const WindowSpec w(WindowKind::Dirichlet, M, 1.0, 4);
    const OptimizedSpreader sp = optimize_spreader(s, box, w);
    Rng rng(14);
    const SampleVector f(testing::random_vector(rng, s.size()));
    const CoefficientVector h = ndft_adjoint(f, s, box);
    const SampleVector g = inverse_adjoint_nfft(sp, w, h);
    REQUIRE(relative_error(ndft_adjoint(g, s, box), h, Norm::L2) <= 1e-3);
  }
}

TEST_CASE("spreader container round trip and validation") {
  Rng rng(13);
  const SamplingSet s = testing::random_points(rng, 2, 40);
  const WindowSpec w(WindowKind::BSpline, 8, 2.0, 2);
  const OptimizedSpreader sp = optimize_spreader(s, FrequencyBox(2, 8), w);
  std::stringstream buf;
  save_spreader(sp, buf);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 8) == "INFFTOPT");

  std::istringstream in(bytes);
  const OptimizedSpreader back = load_spreader(in);
  CHECK(back.col_ptr() == sp.col_ptr());
  CHECK(back.rows() == sp.rows());
  CHECK(back.values() == sp.values());
  CHECK(back.window().oversampled() == 16);

  std::string bad = bytes;
  bad[0] = 'X';
  std::istringstream in_bad(bad);
  CHECK_THROWS_AS(load_spreader(in_bad), IoError);
  std::istringstream in_short(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(load_spreader(in_short), IoError);
  std::istringstream in_long(bytes + "x");
  CHECK_THROWS_AS(load_spreader(in_long), IoError);
  CHECK_THROWS_AS(load_spreader(std::string("/nonexistent/dir/file.bin")), IoError);

  ColumnPattern p{{0, 2}, {1, 0}};
  CHECK_THROWS_AS(OptimizedSpreader(FrequencyBox(1, 2), WindowSpec(WindowKind::Dirichlet, 2, 1.0, 1),
                                    3, p, {1.0, 2.0}),
                  DomainError);
}
