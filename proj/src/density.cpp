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


#include "infft/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace infft {
namespace {

ComplexVector conj_of(const ComplexVector& v) {
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[i]);
  return out;
}

// A^T g = conj(A* conj g)
ComplexVector apply_transpose(const FourierOperator& op, const ComplexVector& g) {
  return conj_of(op.adjoint(conj_of(g)));
}

// conj(A) v = conj(A conj v)
ComplexVector apply_conj(const FourierOperator& op, const ComplexVector& v) {
  return conj_of(op.forward(conj_of(v)));
}

// c_n = prod_t max(0, M - |n_t|) on I_2M, so that
// |[AA*]_{jh}|^2 = sum_n c_n e^{2 pi i n.(x_j - x_h)}.
ComplexVector squared_kernel_coefficients(const FrequencyBox& doubled, int M) {
  ComplexVector c(doubled.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const MultiIndex n = doubled.delinearize(i);
    double v = 1.0;
    for (int t = 0; t < doubled.dim(); ++t) {
      v *= std::max(0, M - std::abs(n[t]));
    }
    c[i] = v;
  }
  return c;
}

// S v with S_{jh} = |[AA*]_{jh}|^2, through A_2M diag(c) A_2M*.
ComplexVector apply_squared_kernel(const FourierOperator& op2,
                                   const ComplexVector& c,
                                   const ComplexVector& v) {
  ComplexVector h = op2.adjoint(v);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= c[i];
  return op2.forward(h);
}

Eigen::MatrixXd squared_kernel_dense(const SamplingSet& sampling, int M) {
  const Eigen::MatrixXcd G = aat_matrix(sampling, M);
  return G.cwiseAbs2();
}

WeightVector voronoi_1d(const SamplingSet& sampling) {
  if (sampling.dim() != 1) throw DomainError("Voronoi weights need d = 1");
  const std::size_t N = sampling.size();
  WeightVector w;
  w.method = WeightMethod::Voronoi1D;
  w.values.assign(N, Complex{1.0, 0.0});
  if (N == 1) return w;
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sampling[a][0] < sampling[b][0];
  });
  for (std::size_t i = 0; i < N; ++i) {
    const double x = sampling[order[i]][0];
    const double prev = sampling[order[(i + N - 1) % N]][0];
    const double next = sampling[order[(i + 1) % N]][0];
    double left = x - prev;
    double right = next - x;
    if (i == 0) left += 1.0;
    if (i == N - 1) right += 1.0;
    w.values[order[i]] = 0.5 * (left + right);
  }
  return w;
}

}  // namespace

const char* to_string(WeightMethod method) {
  switch (method) {
    case WeightMethod::ExactQuadrature: return "exact";
    case WeightMethod::Voronoi1D: return "voronoi";
    case WeightMethod::Uniform: return "uniform";
    case WeightMethod::Pinv: return "pinv";
    case WeightMethod::Wcf: return "wcf";
    case WeightMethod::Pcf: return "pcf";
    case WeightMethod::Relaxed: return "relaxed";
    case WeightMethod::SincSystem: return "sinc";
  }
  return "unknown";
}

WeightMethod parse_weight_method(const std::string& name) {
  for (WeightMethod m :
       {WeightMethod::ExactQuadrature, WeightMethod::Voronoi1D,
        WeightMethod::Uniform, WeightMethod::Pinv, WeightMethod::Wcf,
        WeightMethod::Pcf, WeightMethod::Relaxed, WeightMethod::SincSystem}) {
    if (name == to_string(m)) return m;
  }
  throw DomainError("unknown weight method '" + name + "'");
}

TransformRoute select_route(const FrequencyBox& box, const DensityOptions& opts) {
  return box.size() < opts.ndft_limit ? TransformRoute::Ndft
                                      : TransformRoute::Nfft;
}

WeightVector exact_weights(const SamplingSet& sampling, const FrequencyBox& box,
                           const DensityOptions& opts) {
  if (sampling.dim() != box.dim()) throw DomainError("dimension mismatch");
  const FrequencyBox doubled = box.doubled();
  const TransformRoute route = select_route(doubled, opts);
  const FourierOperator op(sampling, doubled, route);
  const std::size_t N = sampling.size();

  WeightVector w;
  w.method = WeightMethod::ExactQuadrature;
  w.route = route;
  CgResult res;
  if (doubled.size() <= N) {
    w.system = "second-kind";
    ComplexVector e0(doubled.size(), Complex{0.0, 0.0});
    e0[doubled.linearize({0, 0, 0})] = 1.0;
    res = cg_solve(
        [&](const ComplexVector& v) {
          return apply_transpose(op, apply_conj(op, v));
        },
        e0, opts.cg);
    w.values = apply_conj(op, res.x);
  } else {
    w.system = "first-kind";
    const ComplexVector ones(N, Complex{1.0, 0.0});
    res = cg_solve(
        [&](const ComplexVector& v) {
          return apply_conj(op, apply_transpose(op, v));
        },
        ones, opts.cg);
    w.values = std::move(res.x);
  }
  w.cg_iterations = res.iterations;
  w.converged = res.converged;
  w.epsilon = residual_epsilon(w.values, sampling, doubled, route);
  return w;
}

double residual_epsilon(const ComplexVector& w, const SamplingSet& sampling,
                        const FrequencyBox& doubled, TransformRoute route) {
  if (w.size() != sampling.size()) throw DomainError("weight count mismatch");
  const FourierOperator op(sampling, doubled, route);
  ComplexVector r = apply_transpose(op, w);
  r[doubled.linearize({0, 0, 0})] -= 1.0;
  return norm(r, Norm::Max);
}

double residual_epsilon(const WeightVector& w, const SamplingSet& sampling,
                        const FrequencyBox& doubled,
                        const DensityOptions& opts) {
  return residual_epsilon(w.values, sampling, doubled,
                          select_route(doubled, opts));
}

CoefficientVector infft_density(const NfftPlan& plan, const WeightVector& w,
                                const SampleVector& samples) {
  if (w.size() != samples.size() || w.size() != plan.sampling().size()) {
    throw DomainError("weights, samples and plan disagree in length");
  }
  SampleVector scaled(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    scaled.values[j] = w.values[j] * samples.values[j];
  }
  return plan.adjoint(scaled);
}

CoefficientVector infft_density(const FourierOperator& op,
                                const WeightVector& w,
                                const SampleVector& samples) {
  if (w.size() != samples.size() || w.size() != op.sampling().size()) {
    throw DomainError("weights, samples and operator disagree in length");
  }
  ComplexVector scaled(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    scaled[j] = w.values[j] * samples.values[j];
  }
  return CoefficientVector(op.box(), op.adjoint(scaled));
}

Complex aat_entry(const Point& xj, const Point& xh, int d, int M) {
  Complex v = 1.0;
  for (int t = 0; t < d; ++t) v *= dirichlet_factor(M, xj[t] - xh[t]);
  return v;
}

Complex aat_entry(const SamplingSet& sampling, int M, std::size_t j,
                  std::size_t h) {
  if (j >= sampling.size() || h >= sampling.size()) {
    throw DomainError("point index out of range");
  }
  return aat_entry(sampling[j], sampling[h], sampling.dim(), M);
}

Eigen::MatrixXcd aat_matrix(const SamplingSet& sampling, int M) {
  const auto N = static_cast<Eigen::Index>(sampling.size());
  Eigen::MatrixXcd G(N, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    G(j, j) = std::pow(static_cast<double>(M), sampling.dim());
    for (Eigen::Index h = j + 1; h < N; ++h) {
      G(j, h) = aat_entry(sampling[j], sampling[h], sampling.dim(), M);
      G(h, j) = std::conj(G(j, h));
    }
  }
  return G;
}

WeightVector baseline_weights(WeightMethod method, const SamplingSet& sampling,
                              const FrequencyBox& box,
                              const DensityOptions& opts) {
  if (sampling.dim() != box.dim()) throw DomainError("dimension mismatch");
  const std::size_t N = sampling.size();
  const int M = box.bandwidth();
  const double card = static_cast<double>(box.size());
  WeightVector w;
  w.method = method;

  switch (method) {
    case WeightMethod::ExactQuadrature:
      return exact_weights(sampling, box, opts);

    case WeightMethod::Voronoi1D:
      w = voronoi_1d(sampling);
      break;

    case WeightMethod::Uniform:
      w.values.assign(N, Complex{1.0 / static_cast<double>(N), 0.0});
      break;

    case WeightMethod::Pinv: {
      const Eigen::MatrixXcd A = fourier_matrix(sampling, box);
      const Eigen::MatrixXcd P = A * dense_pinv(A);
      w.values.resize(N);
      for (std::size_t j = 0; j < N; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        w.values[j] = P(jj, jj) / card;
      }
      w.system = "dense-pinv";
      break;
    }

    case WeightMethod::Wcf: {
      if (N <= opts.dense_limit) {
        const Eigen::MatrixXd S = squared_kernel_dense(sampling, M);
        Eigen::Index rank = 0;
        const Eigen::VectorXd x = dense_lstsq(
            S, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(N), card),
            &rank);
        w.values.resize(N);
        for (std::size_t j = 0; j < N; ++j) {
          w.values[j] = x(static_cast<Eigen::Index>(j));
        }
        w.fallback = rank < static_cast<Eigen::Index>(N);
        w.system = "dense-lstsq";
      } else {
        const FrequencyBox doubled = box.doubled();
        w.route = select_route(doubled, opts);
        const FourierOperator op2(sampling, doubled, w.route);
        const ComplexVector c = squared_kernel_coefficients(doubled, M);
        const CgResult res = cg_solve(
            [&](const ComplexVector& v) {
              return apply_squared_kernel(op2, c, v);
            },
            ComplexVector(N, Complex{card, 0.0}), opts.cg);
        w.values = res.x;
        w.cg_iterations = res.iterations;
        w.converged = res.converged;
        w.system = "cg-squared-kernel";
      }
      break;
    }

    case WeightMethod::Pcf: {
      ComplexVector rows(N);
      if (N <= opts.dense_limit) {
        const Eigen::MatrixXd S = squared_kernel_dense(sampling, M);
        for (std::size_t j = 0; j < N; ++j) {
          rows[j] = S.row(static_cast<Eigen::Index>(j)).sum();
        }
        w.system = "dense";
      } else {
        const FrequencyBox doubled = box.doubled();
        w.route = select_route(doubled, opts);
        const FourierOperator op2(sampling, doubled, w.route);
        rows = apply_squared_kernel(op2, squared_kernel_coefficients(doubled, M),
                                    ComplexVector(N, Complex{1.0, 0.0}));
        w.system = "squared-kernel-rowsum";
      }
      w.values.resize(N);
      for (std::size_t j = 0; j < N; ++j) w.values[j] = card / rows[j].real();
      break;
    }

    case WeightMethod::Relaxed: {
      w.route = select_route(box, opts);
      const FourierOperator op(sampling, box, w.route);
      const CgResult res = cg_solve(
          [&](const ComplexVector& v) { return op.forward(op.adjoint(v)); },
          ComplexVector(N, Complex{1.0, 0.0}), opts.cg);
      w.values = res.x;
      w.cg_iterations = res.iterations;
      w.converged = res.converged;
      w.system = "cg-aat";
      break;
    }

    case WeightMethod::SincSystem: {
      const FrequencyBox doubled = box.doubled();
      if (doubled.size() * N > 4'000'000) {
        throw CapacityError("sinc system: dense size guard exceeded");
      }
      const int d = box.dim();
      const double scale = static_cast<double>(doubled.size());
      Eigen::MatrixXd K(static_cast<Eigen::Index>(doubled.size()),
                        static_cast<Eigen::Index>(N));
      for (std::size_t l = 0; l < doubled.size(); ++l) {
        const MultiIndex ell = doubled.delinearize(l);
        for (std::size_t j = 0; j < N; ++j) {
          double v = scale;
          for (int t = 0; t < d; ++t) {
            const double y = ell[t] / (2.0 * M);
            v *= sinc(2.0 * M * std::numbers::pi * (sampling[j][t] - y));
          }
          K(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) = v;
        }
      }
      Eigen::Index rank = 0;
      const Eigen::VectorXd x = dense_lstsq(
          K, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(doubled.size())),
          &rank);
      w.values.resize(N);
      for (std::size_t j = 0; j < N; ++j) {
        w.values[j] = x(static_cast<Eigen::Index>(j));
      }
      w.fallback = rank < static_cast<Eigen::Index>(std::min(N, doubled.size()));
      w.system = "dense-sinc-lstsq";
      break;
    }
  }
  if (method != WeightMethod::ExactQuadrature) {
    const FrequencyBox doubled = box.doubled();
    w.epsilon = residual_epsilon(w, sampling, doubled, opts);
  }
  return w;
}

ConditionReport condition_bound_check(const SamplingSet& sampling,
                                      const FrequencyBox& box,
                                      const ComplexVector& w) {
  if (box.size() > 256 || sampling.size() > 1024) {
    throw CapacityError("condition check: dense size guard exceeded");
  }
  if (w.size() != sampling.size()) throw DomainError("weight count mismatch");
  const Eigen::MatrixXcd A = fourier_matrix(sampling, box);
  Eigen::VectorXcd wv(static_cast<Eigen::Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) {
    wv(static_cast<Eigen::Index>(j)) = w[j];
  }
  const Eigen::MatrixXcd H = A.adjoint() * wv.asDiagonal() * A;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H);
  const auto& s = svd.singularValues();
  ConditionReport rep;
  const double smin = s(s.size() - 1);
  rep.kappa2 = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  rep.epsilon = residual_epsilon(w, sampling, box.doubled(), TransformRoute::Ndft);
  const double q = rep.epsilon * static_cast<double>(box.size());
  if (q >= 1.0) {
    rep.holds = true;  // theorem hypothesis not met
  } else {
    rep.bound = (1.0 + q) / (1.0 - q);
    rep.holds = rep.kappa2 <= rep.bound + 1e-8;
  }
  return rep;
}

}  // namespace infft
