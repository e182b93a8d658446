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


#include "infft/matopt.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "infft/solvers.hpp"

namespace infft {
namespace {

// Bins of the wrapped window support of one coordinate, ascending, merged
// when 2m+1 exceeds the grid.
void axis_bins(double x, int Msigma, int m, std::vector<int>& out) {
  const AxisSupport s = axis_support(x, Msigma, m);
  out.clear();
  for (int i = 0; i < s.count; ++i) out.push_back(dft_bin(s.top - i, Msigma));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

double grid_volume(int d, int n) {
  double v = 1.0;
  for (int t = 0; t < d; ++t) v *= n;
  return v;
}

// sum_{k in I_M} ŵ_1(k) e^{2 pi i k u}
Complex axis_kernel(const WindowSpec& window, double u) {
  const int M = window.bandwidth();
  if (window.kind() == WindowKind::Dirichlet) return dirichlet_factor(M, u);
  Complex acc = 0.0;
  for (int k = -M / 2; k < M / 2; ++k) {
    acc += window.hat_1d(k) * std::polar(1.0, 2.0 * std::numbers::pi * k * u);
  }
  return acc;
}

// Per point and axis: sin/cos of (M-1) pi x, pi x and M pi x, so that the
// Dirichlet factor of a difference follows from angle subtraction.
struct AxisTrig {
  std::vector<std::array<double, 6>> v;  // N * d entries
};

AxisTrig axis_trig(const SamplingSet& sampling, int M) {
  const int d = sampling.dim();
  const double pi = std::numbers::pi;
  AxisTrig t;
  t.v.resize(sampling.size() * static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    for (int a = 0; a < d; ++a) {
      const double x = sampling[j][a];
      t.v[j * d + a] = {std::sin((M - 1) * pi * x), std::cos((M - 1) * pi * x),
                        std::sin(pi * x), std::cos(pi * x),
                        std::sin(M * pi * x), std::cos(M * pi * x)};
    }
  }
  return t;
}

// Re(H* H) restricted to rows.
Eigen::MatrixXd real_gram(const SamplingSet& sampling, int M,
                          const std::vector<std::size_t>& rows,
                          const AxisTrig& trig) {
  const int d = sampling.dim();
  const auto r = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd G(r, r);
  for (Eigen::Index a = 0; a < r; ++a) {
    G(a, a) = grid_volume(d, M);
    for (Eigen::Index b = a + 1; b < r; ++b) {
      Complex v = 1.0;
      for (int t = 0; t < d; ++t) {
        const auto& p = trig.v[rows[a] * d + t];
        const auto& q = trig.v[rows[b] * d + t];
        const double den = p[2] * q[3] - p[3] * q[2];
        Complex f;
        if (std::abs(den) < 1e-3) {
          // close points: avoid cancellation in the subtracted angles
          f = dirichlet_factor(M, sampling[rows[a]][t] - sampling[rows[b]][t]);
        } else {
          const double num = p[0] * q[1] - p[1] * q[0];
          const double cm = p[5] * q[5] + p[4] * q[4];
          const double sm = p[4] * q[5] - p[5] * q[4];
          f = Complex(num / den + cm, -sm);
        }
        v *= f;
      }
      G(a, b) = v.real();
      G(b, a) = v.real();
    }
  }
  return G;
}

// A column whose Gram matrix is numerically singular is solved on the stacked
// real system [Re H; Im H] b = [Re f; Im f] when H_l is small enough. This is
// the same pseudoinverse solution without squaring the condition number.
constexpr double kDirectBudget = 6e7;  // flops for one column

bool direct_affordable(std::size_t freqs, std::size_t r) {
  const double rr = static_cast<double>(r);
  return 2.0 * static_cast<double>(freqs) * rr * rr <= kDirectBudget;
}

Eigen::VectorXd direct_column(const SamplingSet& sampling, const FrequencyBox& box,
                              const WindowSpec& window, const MultiIndex& l,
                              const std::vector<std::size_t>& rows, double& eps) {
  const int d = box.dim();
  const int M = box.bandwidth();
  const int n = window.oversampled();
  const double pi = std::numbers::pi;
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto K = static_cast<Eigen::Index>(box.size());
  // per-axis tables e^{-2 pi i k x_{j,t}}, k in I_M
  std::vector<Eigen::MatrixXcd> axis(static_cast<std::size_t>(d), Eigen::MatrixXcd(M, r));
  for (int t = 0; t < d; ++t) {
    for (Eigen::Index a = 0; a < r; ++a) {
      const double x = sampling[rows[static_cast<std::size_t>(a)]][t];
      for (int k = -M / 2; k < M / 2; ++k) axis[t](k + M / 2, a) = std::polar(1.0, -2.0 * pi * k * x);
    }
  }
  Eigen::MatrixXd H(2 * K, r);
  Eigen::VectorXd f(2 * K);
  for (Eigen::Index i = 0; i < K; ++i) {
    const MultiIndex k = box.delinearize(static_cast<std::size_t>(i));
    double phase = 0.0;
    for (int t = 0; t < d; ++t) phase += static_cast<double>(k[t]) * l[t] / n;
    const Complex fk = window_hat(window, box, k) * std::polar(1.0, -2.0 * pi * phase);
    f(i) = fk.real();
    f(K + i) = fk.imag();
    for (Eigen::Index a = 0; a < r; ++a) {
      Complex h = 1.0;
      for (int t = 0; t < d; ++t) h *= axis[t](k[t] + M / 2, a);
      H(i, a) = h.real();
      H(K + i, a) = h.imag();
    }
  }
  const Eigen::VectorXd b = H.completeOrthogonalDecomposition().solve(f);
  eps = (H * b - f).squaredNorm();
  return b;
}

constexpr char kMagic[8] = {'I', 'N', 'F', 'F', 'T', 'O', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(b, 4);
}

void put_f64(std::ostream& out, double v) {
  const auto u = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xffu);
  out.write(b, 8);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw IoError("truncated spreader file");
  }
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) {
    throw IoError("truncated spreader file");
  }
  std::uint64_t u = 0;
  for (int i = 7; i >= 0; --i) u = (u << 8) | b[i];
  return std::bit_cast<double>(u);
}

}  // namespace

ColumnPattern column_pattern(const SamplingSet& sampling, int Msigma, int m) {
  const int d = sampling.dim();
  const std::size_t cols = static_cast<std::size_t>(grid_volume(d, Msigma));
  std::vector<std::vector<int>> bins(static_cast<std::size_t>(d));
  std::vector<std::vector<std::size_t>> row_cols(sampling.size());
  std::vector<std::size_t> counts(cols, 0);
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    for (int t = 0; t < d; ++t) axis_bins(sampling[j][t], Msigma, m, bins[t]);
    auto& rc = row_cols[j];
    std::size_t total = 1;
    for (int t = 0; t < d; ++t) total *= bins[t].size();
    rc.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      std::size_t col = 0;
      std::size_t stride = 1;
      for (int t = d - 1; t >= 0; --t) {
        const std::size_t cnt = bins[t].size();
        col += static_cast<std::size_t>(bins[t][rest % cnt]) * stride;
        rest /= cnt;
        stride *= static_cast<std::size_t>(Msigma);
      }
      rc.push_back(col);
      ++counts[col];
    }
  }
  ColumnPattern p;
  p.col_ptr.assign(cols + 1, 0);
  for (std::size_t c = 0; c < cols; ++c) p.col_ptr[c + 1] = p.col_ptr[c] + counts[c];
  p.rows.resize(p.col_ptr.back());
  std::vector<std::size_t> fill(p.col_ptr.begin(), p.col_ptr.end() - 1);
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    for (std::size_t c : row_cols[j]) {
      p.rows[fill[c]++] = static_cast<std::uint32_t>(j);
    }
  }
  return p;
}

std::vector<std::size_t> column_index_set(const SamplingSet& sampling,
                                          int Msigma, int m,
                                          const MultiIndex& l) {
  const FrequencyBox grid(sampling.dim(), Msigma);
  if (!grid.contains(l)) throw DomainError("grid index outside I_Msigma");
  std::vector<std::size_t> rows;
  std::vector<int> bins;
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    bool inside = true;
    for (int t = 0; t < sampling.dim() && inside; ++t) {
      axis_bins(sampling[j][t], Msigma, m, bins);
      inside = std::binary_search(bins.begin(), bins.end(), dft_bin(l[t], Msigma));
    }
    if (inside) rows.push_back(j);
  }
  return rows;
}

Eigen::MatrixXcd gram_matrix(const SamplingSet& sampling, int M,
                             const std::vector<std::size_t>& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const int d = sampling.dim();
  Eigen::MatrixXcd G(r, r);
  for (Eigen::Index a = 0; a < r; ++a) {
    const Point& xa = sampling[rows[a]];
    G(a, a) = grid_volume(d, M);
    for (Eigen::Index b = a + 1; b < r; ++b) {
      const Point& xb = sampling[rows[b]];
      Complex v = 1.0;
      for (int t = 0; t < d; ++t) v *= dirichlet_factor(M, xa[t] - xb[t]);
      G(a, b) = v;
      G(b, a) = std::conj(v);
    }
  }
  return G;
}

Eigen::VectorXcd rhs_v(const SamplingSet& sampling, const WindowSpec& window,
                       const MultiIndex& l, const std::vector<std::size_t>& rows) {
  const int d = sampling.dim();
  const int n = window.oversampled();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    Complex acc = 1.0;
    for (int t = 0; t < d; ++t) {
      acc *= axis_kernel(window, sampling[rows[a]][t] - static_cast<double>(l[t]) / n);
    }
    v(static_cast<Eigen::Index>(a)) = acc;
  }
  return v;
}

OptimizedSpreader::OptimizedSpreader(const FrequencyBox& box,
                                     const WindowSpec& window,
                                     std::size_t num_points,
                                     ColumnPattern pattern,
                                     std::vector<double> values)
    : stage_(std::make_shared<const OversampledStage>(box, window)),
      num_points_(num_points),
      pattern_(std::move(pattern)),
      values_(std::move(values)) {
  const std::size_t cols = stage_->grid_size();
  if (pattern_.col_ptr.size() != cols + 1 || pattern_.col_ptr.front() != 0 ||
      pattern_.col_ptr.back() != pattern_.rows.size() ||
      values_.size() != pattern_.rows.size()) {
    throw DomainError("inconsistent spreader pattern");
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (pattern_.col_ptr[c] > pattern_.col_ptr[c + 1]) {
      throw DomainError("column pointers must be nondecreasing");
    }
    for (std::size_t p = pattern_.col_ptr[c]; p < pattern_.col_ptr[c + 1]; ++p) {
      if (pattern_.rows[p] >= num_points) throw DomainError("row out of range");
      if (p > pattern_.col_ptr[c] && pattern_.rows[p] <= pattern_.rows[p - 1]) {
        throw DomainError("rows must be strictly ascending within a column");
      }
      if (!std::isfinite(values_[p])) throw DomainError("non-finite entry");
    }
  }
  epsilon.assign(cols, std::numeric_limits<double>::quiet_NaN());
}

ComplexVector OptimizedSpreader::gather(std::span<const Complex> samples) const {
  if (samples.size() != num_points_) throw DomainError("sample count mismatch");
  ComplexVector g(num_columns(), Complex{0.0, 0.0});
  for (std::size_t c = 0; c < g.size(); ++c) {
    Complex acc = 0.0;
    for (std::size_t p = pattern_.col_ptr[c]; p < pattern_.col_ptr[c + 1]; ++p) {
      acc += values_[p] * samples[pattern_.rows[p]];
    }
    g[c] = acc;
  }
  return g;
}

ComplexVector OptimizedSpreader::spread(std::span<const Complex> grid) const {
  if (grid.size() != num_columns()) throw DomainError("grid size mismatch");
  ComplexVector f(num_points_, Complex{0.0, 0.0});
  for (std::size_t c = 0; c < grid.size(); ++c) {
    for (std::size_t p = pattern_.col_ptr[c]; p < pattern_.col_ptr[c + 1]; ++p) {
      f[pattern_.rows[p]] += values_[p] * grid[c];
    }
  }
  return f;
}

OptimizedSpreader optimize_spreader(const SamplingSet& sampling,
                                    const FrequencyBox& box,
                                    const WindowSpec& window, double ridge) {
  if (sampling.dim() != box.dim()) throw DomainError("dimension mismatch");
  if (window.bandwidth() != box.bandwidth()) {
    throw DomainError("window bandwidth does not match the box");
  }
  if (!(ridge >= 0.0)) throw DomainError("ridge must be nonnegative");
  if (sampling.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("too many points for 32-bit row indices");
  }
  const int d = box.dim();
  const int n = window.oversampled();
  const double vol = grid_volume(d, box.bandwidth());
  ColumnPattern pattern = column_pattern(sampling, n, window.cutoff());
  const FrequencyBox grid(d, n);

  double hat_energy = 0.0;
  for (std::size_t c = 0; c < box.size(); ++c) {
    const double h = window_hat(window, box, box.delinearize(c));
    hat_energy += h * h;
  }

  std::vector<double> values(pattern.rows.size(), 0.0);
  std::vector<double> eps(grid.size(), hat_energy);
  SpreaderReport rep;
  std::vector<std::size_t> rows;
  const AxisTrig trig = axis_trig(sampling, box.bandwidth());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const std::size_t begin = pattern.col_ptr[c];
    const std::size_t end = pattern.col_ptr[c + 1];
    if (begin == end) {
      ++rep.empty_columns;
      continue;
    }
    // Column c is the bin of l; recover the signed index.
    MultiIndex l{0, 0, 0};
    std::size_t rest = c;
    for (int t = d - 1; t >= 0; --t) {
      int b = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      l[t] = b >= n / 2 ? b - n : b;
    }
    rows.assign(pattern.rows.begin() + static_cast<std::ptrdiff_t>(begin),
                pattern.rows.begin() + static_cast<std::ptrdiff_t>(end));
    const Eigen::MatrixXd G = real_gram(sampling, box.bandwidth(), rows, trig);
    const Eigen::VectorXcd vc = rhs_v(sampling, window, l, rows);
    const Eigen::VectorXd v = vc.real();
    const double vnorm = vc.norm();
    if (vnorm > 0.0) {
      rep.max_imag_ratio = std::max(rep.max_imag_ratio, vc.imag().norm() / vnorm);
    }

    Eigen::VectorXd b;
    bool solved = false;
    bool direct = false;
    const bool direct_ok = ridge == 0.0 && direct_affordable(box.size(), rows.size());
    for (double lambda : {ridge, std::max(ridge, 1e-12)}) {
      if (lambda > 0.0 && direct_ok) {
        double e = 0.0;
        b = direct_column(sampling, box, window, l, rows, e);
        for (std::size_t p = begin; p < end; ++p) values[p] = b(static_cast<Eigen::Index>(p - begin));
        eps[c] = e;
        ++rep.direct_columns;
        direct = true;
        break;
      }
      Eigen::MatrixXd Greg = G;
      Greg.diagonal().array() += lambda * vol;
      Eigen::LLT<Eigen::MatrixXd> llt(Greg);
      if (llt.info() == Eigen::Success) {
        b = llt.solve(v);
        if (b.allFinite()) {
          solved = true;
          if (lambda > 0.0 && ridge == 0.0) ++rep.ridge_columns;
          break;
        }
      }
      if (ridge > 0.0) break;
    }
    if (direct) continue;
    if (!solved) {
      b = dense_lstsq(G, v);
      ++rep.fallback_columns;
    }
    for (std::size_t p = begin; p < end; ++p) values[p] = b(static_cast<Eigen::Index>(p - begin));
    const double e = b.dot(G * b) - 2.0 * b.dot(v) + hat_energy;
    eps[c] = std::max(0.0, e);
  }
  for (double e : eps) rep.max_epsilon = std::max(rep.max_epsilon, e);

  OptimizedSpreader s(box, window, sampling.size(), std::move(pattern),
                      std::move(values));
  s.epsilon = std::move(eps);
  s.report = rep;
  return s;
}

namespace {

void check_window(const OptimizedSpreader& s, const WindowSpec& w) {
  if (w.kind() != s.window().kind() || w.bandwidth() != s.window().bandwidth() ||
      w.oversampled() != s.window().oversampled() ||
      w.cutoff() != s.window().cutoff()) {
    throw DomainError("window does not match the optimized spreader");
  }
}

}  // namespace

CoefficientVector infft_opt(const OptimizedSpreader& spreader,
                            const WindowSpec& window,
                            const SampleVector& samples) {
  check_window(spreader, window);
  ComplexVector g = spreader.gather(samples.values);
  return CoefficientVector(spreader.box(), spreader.stage().analyze(g));
}

SampleVector inverse_adjoint_nfft(const OptimizedSpreader& spreader,
                                  const WindowSpec& window,
                                  const CoefficientVector& coeffs) {
  check_window(spreader, window);
  if (!(coeffs.box == spreader.box())) throw DomainError("box mismatch");
  const ComplexVector g = spreader.stage().synthesize(coeffs.values);
  return SampleVector(spreader.spread(g));
}

double frobenius_deviation(const SamplingSet& sampling, const FrequencyBox& box,
                           const SynthesisOperator& apply) {
  if (sampling.size() * box.size() > kFrobeniusGuard) {
    throw CapacityError("Frobenius deviation: dense size guard exceeded");
  }
  double acc = 0.0;
  ComplexVector e(box.size(), Complex{0.0, 0.0});
  for (std::size_t c = 0; c < box.size(); ++c) {
    e[c] = 1.0;
    const ComplexVector f = apply(e);
    e[c] = 0.0;
    CoefficientVector col = ndft_adjoint(SampleVector(f), sampling, box);
    col.values[c] -= 1.0;
    for (const auto& z : col.values) acc += std::norm(z);
  }
  return std::sqrt(acc);
}

double frobenius_deviation(const SamplingSet& sampling, const FrequencyBox& box,
                           const NfftPlan& plan) {
  return frobenius_deviation(sampling, box, [&](const ComplexVector& c) {
    return plan.forward(CoefficientVector(box, c)).values;
  });
}

double frobenius_deviation(const SamplingSet& sampling, const FrequencyBox& box,
                           const OptimizedSpreader& spreader) {
  return frobenius_deviation(sampling, box, [&](const ComplexVector& c) {
    return spreader.spread(spreader.stage().synthesize(c));
  });
}

void save_spreader(const OptimizedSpreader& s, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(s.box().dim()));
  put_u32(out, static_cast<std::uint32_t>(s.box().bandwidth()));
  put_u32(out, static_cast<std::uint32_t>(s.window().oversampled()));
  put_u32(out, static_cast<std::uint32_t>(s.window().cutoff()));
  put_u32(out, static_cast<std::uint32_t>(s.num_points()));
  put_u32(out, s.window().kind() == WindowKind::BSpline ? 0u : 1u);
  for (std::size_t c = 0; c < s.num_columns(); ++c) {
    const std::size_t b = s.col_ptr()[c];
    const std::size_t e = s.col_ptr()[c + 1];
    put_u32(out, static_cast<std::uint32_t>(e - b));
    for (std::size_t p = b; p < e; ++p) put_u32(out, s.rows()[p]);
    for (std::size_t p = b; p < e; ++p) put_f64(out, s.values()[p]);
  }
  if (!out) throw IoError("failed to write spreader");
}

OptimizedSpreader load_spreader(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) ||
      !std::equal(magic, magic + 8, kMagic)) {
    throw IoError("not an optimized spreader file");
  }
  if (get_u32(in) != kVersion) throw IoError("unsupported spreader version");
  const std::uint32_t d = get_u32(in);
  const std::uint32_t M = get_u32(in);
  const std::uint32_t Msigma = get_u32(in);
  const std::uint32_t m = get_u32(in);
  const std::uint32_t N = get_u32(in);
  const std::uint32_t kind = get_u32(in);
  if (d < 1 || d > kMaxDim || M < 2 || M % 2 || Msigma < M || Msigma % 2 ||
      m < 1 || N < 1 || kind > 1 || Msigma > (1u << 12)) {
    throw IoError("invalid spreader header");
  }
  const FrequencyBox box(static_cast<int>(d), static_cast<int>(M));
  const WindowSpec window(kind == 0 ? WindowKind::BSpline : WindowKind::Dirichlet,
                          static_cast<int>(M),
                          static_cast<double>(Msigma) / M, static_cast<int>(m));
  if (window.oversampled() != static_cast<int>(Msigma)) {
    throw IoError("inconsistent oversampled size");
  }
  const auto cols = static_cast<std::size_t>(grid_volume(static_cast<int>(d),
                                                         static_cast<int>(Msigma)));
  ColumnPattern p;
  p.col_ptr.reserve(cols + 1);
  p.col_ptr.push_back(0);
  std::vector<double> values;
  for (std::size_t c = 0; c < cols; ++c) {
    const std::uint32_t count = get_u32(in);
    if (count > N) throw IoError("column longer than the point count");
    for (std::uint32_t i = 0; i < count; ++i) p.rows.push_back(get_u32(in));
    for (std::uint32_t i = 0; i < count; ++i) values.push_back(get_f64(in));
    p.col_ptr.push_back(p.rows.size());
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw IoError("trailing bytes after spreader data");
  }
  try {
    return OptimizedSpreader(box, window, N, std::move(p), std::move(values));
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid spreader data: ") + e.what());
  }
}

void save_spreader(const OptimizedSpreader& spreader, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_spreader(spreader, out);
}

OptimizedSpreader load_spreader(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return load_spreader(in);
}

}  // namespace infft
