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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "infft/core.hpp"
#include "infft/transforms.hpp"
#include "infft/windows.hpp"

namespace infft {

/// Column-compressed sparsity pattern over the oversampled grid; columns
/// in DFT-bin order, rows ascending inside each column.
struct ColumnPattern {
  std::vector<std::size_t> col_ptr;
  std::vector<std::uint32_t> rows;
};

/// Rows j with Msigma*x_j - l in [-m, m]^d modulo Msigma, for every bin l.
ColumnPattern column_pattern(const SamplingSet& sampling, int Msigma, int m);

/// The same set for one signed grid index l in I_Msigma.
std::vector<std::size_t> column_index_set(const SamplingSet& sampling,
                                          int Msigma, int m,
                                          const MultiIndex& l);

/// H_l* H_l with entries prod_t dirichlet_factor(M, x_{h,t} - x_{j,t}).
Eigen::MatrixXcd gram_matrix(const SamplingSet& sampling, int M,
                             const std::vector<std::size_t>& rows);

/// v_{l,j} = sum_{k in I_M} ŵ(k) e^{2 pi i k.(x_j - l/Msigma)}.
Eigen::VectorXcd rhs_v(const SamplingSet& sampling, const WindowSpec& window,
                       const MultiIndex& l, const std::vector<std::size_t>& rows);

struct SpreaderReport {
  std::size_t empty_columns = 0;
  std::size_t ridge_columns = 0;     // needed the ridge to factor
  std::size_t fallback_columns = 0;  // solved by dense least squares
  std::size_t direct_columns = 0;    // solved on H_l instead of its Gram
  double max_epsilon = 0.0;
  double max_imag_ratio = 0.0;       // max_l ||Im v_l|| / ||v_l||
};

/// The optimized sparse matrix B_opt, stored by columns.
class OptimizedSpreader {
 public:
  OptimizedSpreader(const FrequencyBox& box, const WindowSpec& window,
                    std::size_t num_points, ColumnPattern pattern,
                    std::vector<double> values);

  const FrequencyBox& box() const { return stage_->box(); }
  const WindowSpec& window() const { return stage_->window(); }
  const OversampledStage& stage() const { return *stage_; }
  std::size_t num_points() const { return num_points_; }
  std::size_t num_columns() const { return pattern_.col_ptr.size() - 1; }

  const std::vector<std::size_t>& col_ptr() const { return pattern_.col_ptr; }
  const std::vector<std::uint32_t>& rows() const { return pattern_.rows; }
  const std::vector<double>& values() const { return values_; }

  // Per-column eps_l; NaN when loaded from disk.
  std::vector<double> epsilon;
  SpreaderReport report;

  /// B_opt^T f on the oversampled grid.
  ComplexVector gather(std::span<const Complex> samples) const;
  /// B_opt g for a grid vector g.
  ComplexVector spread(std::span<const Complex> grid) const;

 private:
  std::shared_ptr<const OversampledStage> stage_;
  std::size_t num_points_;
  ColumnPattern pattern_;
  std::vector<double> values_;
};

/// Column-wise least squares optimization of the spreading matrix.
///
/// Each column minimizes ||H_l b - diag(ŵ) f_l||_2 over real b; the normal
/// equations Re(H_l* H_l) b = Re(v_l) are factored by Cholesky, with
/// ridge * M^d added (escalating to 1e-12 * M^d) and finally an SVD least
/// squares solve when the factorization breaks down.
OptimizedSpreader optimize_spreader(const SamplingSet& sampling,
                                    const FrequencyBox& box,
                                    const WindowSpec& window,
                                    double ridge = 0.0);

/// h = D* F* B_opt* f.
CoefficientVector infft_opt(const OptimizedSpreader& spreader,
                            const WindowSpec& window,
                            const SampleVector& samples);

/// f = B_opt F D h.
SampleVector inverse_adjoint_nfft(const OptimizedSpreader& spreader,
                                  const WindowSpec& window,
                                  const CoefficientVector& coeffs);

/// ||A* B F D - I||_F for the approximation g = B F D f̂ given by apply.
using SynthesisOperator = std::function<ComplexVector(const ComplexVector&)>;
double frobenius_deviation(const SamplingSet& sampling, const FrequencyBox& box,
                           const SynthesisOperator& apply);
double frobenius_deviation(const SamplingSet& sampling, const FrequencyBox& box,
                           const NfftPlan& plan);
double frobenius_deviation(const SamplingSet& sampling, const FrequencyBox& box,
                           const OptimizedSpreader& spreader);

constexpr std::size_t kFrobeniusGuard = 4'000'000;

/// Little-endian binary container; the loader validates every invariant.
void save_spreader(const OptimizedSpreader& spreader, std::ostream& out);
OptimizedSpreader load_spreader(std::istream& in);
void save_spreader(const OptimizedSpreader& spreader, const std::string& path);
OptimizedSpreader load_spreader(const std::string& path);

}  // namespace infft
