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
#include <random>
#include <string>

#include "infft/core.hpp"

namespace infft {

enum class GridKind {
  Equispaced,
  Jittered,
  Random,
  Polar,
  ModifiedPolar,
  Linogram,
  GoldenPolar,
  GoldenLinogram,
};

const char* to_string(GridKind kind);
GridKind parse_grid_kind(const std::string& name);
bool is_polar_kind(GridKind kind);

struct GridRequest {
  GridKind kind = GridKind::Equispaced;
  int d = 1;
  int n = 0;   // points per axis for the tensor kinds
  int R = 0;   // radial count for the polar kinds
  int T = 0;   // angular count for the polar kinds
  std::uint64_t seed = 0;
};

/// mt19937_64 with uniform reals taken from the top 53 bits, so draws are
/// identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

SamplingSet generate_grid(const GridRequest& req);

/// Golden angle theta_t in [-pi/2, pi/2).
double golden_angle(int t);

/// Even integer ceil(sqrt(2) R) rounded up to the next even number.
int modified_polar_radii(int R);

}  // namespace infft
