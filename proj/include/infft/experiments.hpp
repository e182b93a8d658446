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

#include <cstdint>
#include <string>
#include <vector>

#include "infft/density.hpp"
#include "infft/grids.hpp"
#include "infft/matopt.hpp"
#include "infft/windows.hpp"

namespace infft {

constexpr const char* kLibraryVersion = "infft 1.0.0";

/// Resolved configuration of one experiment run.
///
/// `sweep` holds the bandwidths (trig-poly, phantom) or the exponents mu
/// with R = 2^mu (frobenius); an empty sweep selects the defaults.
struct ExperimentConfig {
  std::string experiment;
  GridRequest grid;
  int M = 0;
  double sigma = 1.0;
  int m = 4;
  WindowKind window = WindowKind::Dirichlet;
  std::vector<WeightMethod> methods;
  std::uint64_t seed = 1;
  int reps = 1;
  std::string out;
  std::vector<int> sweep;
  std::size_t cg_maxit = 0;
  int profile_row = -1;
  int pulse_width = 24;
  int under_M = 128;
};

/// A at bandwidth M for the given points: NDFT when N |I_M| is small,
/// otherwise an NFFT with the accurate window.
FourierOperator make_operator(const SamplingSet& sampling,
                              const FrequencyBox& box);

struct TrigPolyRow {
  int d = 0;
  int M = 0;
  std::size_t N = 0;
  WeightMethod method = WeightMethod::ExactQuadrature;
  double e2 = 0.0;
  double einf = 0.0;
  double epsilon = 0.0;
  std::size_t cg_iters = 0;
};

/// Random real coefficients in [1, 10], synthesis, density compensation
/// reconstruction; errors are maxima over the repetitions.
std::vector<TrigPolyRow> run_trig_poly(const ExperimentConfig& cfg);

struct FrobeniusRow {
  GridKind grid = GridKind::Polar;
  int R = 0;
  int T = 0;
  WindowKind window = WindowKind::BSpline;
  int m = 0;
  double sigma = 0.0;
  std::size_t N = 0;
  double n = 0.0;      // NaN for the Dirichlet window (no spatial B)
  double n_opt = 0.0;
  std::string skipped;  // reason when the sweep point was skipped
};

std::vector<FrobeniusRow> run_frobenius(const ExperimentConfig& cfg);

struct PhantomRow {
  int M = 0;
  std::size_t N = 0;
  double alg4_e2 = 0.0;
  double alg4_precompute = 0.0;
  double alg4_reconstruct = 0.0;
  std::size_t alg4_cg_iters = 0;
  double alg4_epsilon = 0.0;
  double alg6_e2 = 0.0;
  double alg6_precompute = 0.0;
  double alg6_reconstruct = 0.0;
};

struct PhantomUnderdetermined {
  int M = 0;
  std::size_t N = 0;
  double uniform_e2 = 0.0;
  double alg4_e2 = 0.0;
  double alg6_e2 = 0.0;
  std::size_t alg4_cg_iters = 0;
  std::vector<double> exact, uniform, alg4, alg6;  // real parts, M x M
};

struct PhantomResult {
  std::vector<PhantomRow> table;
  PhantomUnderdetermined under;
};

/// Linogram grids with R = 2M (table) and R = M (underdetermined run);
/// under_M = 0 skips the underdetermined run.
PhantomResult run_phantom(const ExperimentConfig& cfg);
PhantomRow phantom_row(int M, const ExperimentConfig& cfg);
PhantomUnderdetermined phantom_underdetermined(int M, const ExperimentConfig& cfg);

struct BandlimitedRow {
  std::string method;
  double max_error = 0.0;
  std::vector<double> error_field;  // |h - f̂| on I_M
};

struct BandlimitedResult {
  double baseline = 0.0;  // equispaced grid, weights 1/N
  std::vector<BandlimitedRow> rows;
};

BandlimitedResult run_bandlimited(const ExperimentConfig& cfg);

/// Fills defaults per experiment and checks every precondition.
ExperimentConfig resolve_config(ExperimentConfig cfg);

/// JSON manifest of a resolved configuration and its reader.
std::string manifest_json(const ExperimentConfig& cfg,
                          const std::vector<std::string>& outputs);
ExperimentConfig config_from_manifest(const std::string& text);

/// Runs the experiment and writes its outputs under cfg.out.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg);

}  // namespace infft
