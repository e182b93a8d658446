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


#include "infft/grids.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace infft {
namespace {

void require_polar(const GridRequest& req) {
  if (req.d != 2) throw DomainError("polar-type grids are two-dimensional");
  if (req.R < 2 || req.R % 2 != 0 || req.T < 2 || req.T % 2 != 0) {
    throw DomainError("R and T must be even and positive");
  }
}

void require_tensor(const GridRequest& req) {
  if (req.d < 1 || req.d > kMaxDim) throw DomainError("dimension must be 1..3");
  if (req.n < 1) throw DomainError("points per axis must be positive");
}

// Calls fn(i_0, ..., i_{d-1}) over the tensor index set {0..n-1}^d.
template <typename Fn>
void for_each_tensor(int d, int n, Fn fn) {
  std::size_t total = 1;
  for (int t = 0; t < d; ++t) total *= static_cast<std::size_t>(n);
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t a = 0; a < total; ++a) {
    std::size_t rest = a;
    for (int t = d - 1; t >= 0; --t) {
      idx[t] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    fn(idx);
  }
}

bool inside_square(double a, double b) {
  return a >= -0.5 && a < 0.5 && b >= -0.5 && b < 0.5;
}

}  // namespace

const char* to_string(GridKind kind) {
  switch (kind) {
    case GridKind::Equispaced: return "equispaced";
    case GridKind::Jittered: return "jittered";
    case GridKind::Random: return "random";
    case GridKind::Polar: return "polar";
    case GridKind::ModifiedPolar: return "mpolar";
    case GridKind::Linogram: return "linogram";
    case GridKind::GoldenPolar: return "golden-polar";
    case GridKind::GoldenLinogram: return "golden-linogram";
  }
  return "unknown";
}

GridKind parse_grid_kind(const std::string& name) {
  for (GridKind k : {GridKind::Equispaced, GridKind::Jittered, GridKind::Random,
                     GridKind::Polar, GridKind::ModifiedPolar,
                     GridKind::Linogram, GridKind::GoldenPolar,
                     GridKind::GoldenLinogram}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown grid kind '" + name + "'");
}

bool is_polar_kind(GridKind kind) {
  return kind != GridKind::Equispaced && kind != GridKind::Jittered &&
         kind != GridKind::Random;
}

double golden_angle(int t) {
  const double pi = std::numbers::pi;
  const double step = 2.0 * pi / (1.0 + std::sqrt(5.0));
  double a = std::fmod(pi / 2.0 + t * step, pi);
  if (a < 0.0) a += pi;
  return a - pi / 2.0;
}

int modified_polar_radii(int R) {
  const int c = static_cast<int>(std::ceil(std::sqrt(2.0) * R));
  return c % 2 == 0 ? c : c + 1;
}

SamplingSet generate_grid(const GridRequest& req) {
  std::vector<Point> pts;
  const double pi = std::numbers::pi;
  switch (req.kind) {
    case GridKind::Equispaced: {
      require_tensor(req);
      const int n = req.n;
      for_each_tensor(req.d, n, [&](const std::array<int, 3>& i) {
        Point p{0.0, 0.0, 0.0};
        for (int t = 0; t < req.d; ++t) {
          p[t] = static_cast<double>(i[t] - n / 2) / n;
        }
        pts.push_back(p);
      });
      break;
    }
    case GridKind::Jittered: {
      require_tensor(req);
      Rng rng(req.seed);
      const int n = req.n;
      for_each_tensor(req.d, n, [&](const std::array<int, 3>& i) {
        Point p{0.0, 0.0, 0.0};
        for (int t = 0; t < req.d; ++t) {
          const double centre = -0.5 + (2.0 * (i[t] + 1) - 1.0) / (2.0 * n);
          p[t] = centre + rng.uniform(-1.0, 1.0) / n;
        }
        pts.push_back(p);
      });
      break;
    }
    case GridKind::Random: {
      require_tensor(req);
      Rng rng(req.seed);
      for_each_tensor(req.d, req.n, [&](const std::array<int, 3>&) {
        Point p{0.0, 0.0, 0.0};
        for (int t = 0; t < req.d; ++t) p[t] = 0.5 * rng.uniform(-1.0, 1.0);
        pts.push_back(p);
      });
      break;
    }
    case GridKind::Polar:
    case GridKind::ModifiedPolar:
    case GridKind::GoldenPolar: {
      require_polar(req);
      const int radii = req.kind == GridKind::ModifiedPolar
                            ? modified_polar_radii(req.R)
                            : req.R;
      for (int j = -radii / 2; j < radii / 2; ++j) {
        const double r = static_cast<double>(j) / req.R;
        for (int a = 0; a < req.T; ++a) {
          const double theta = req.kind == GridKind::GoldenPolar
                                   ? golden_angle(a)
                                   : pi * (a - req.T / 2) / req.T;
          const double x = r * std::cos(theta);
          const double y = r * std::sin(theta);
          if (req.kind == GridKind::ModifiedPolar && !inside_square(x, y)) {
            continue;
          }
          pts.push_back({x, y, 0.0});
        }
      }
      break;
    }
    case GridKind::Linogram: {
      require_polar(req);
      if (req.T % 4 != 0) throw DomainError("linogram grids need T divisible by 4");
      for (int j = -req.R / 2; j < req.R / 2; ++j) {
        const double r = static_cast<double>(j) / req.R;
        for (int t = -req.T / 4; t < req.T / 4; ++t) {
          pts.push_back({r, 4.0 * t / req.T * r, 0.0});
        }
      }
      for (int j = -req.R / 2; j < req.R / 2; ++j) {
        const double r = static_cast<double>(j) / req.R;
        for (int t = -req.T / 4; t < req.T / 4; ++t) {
          pts.push_back({-4.0 * t / req.T * r, r, 0.0});
        }
      }
      break;
    }
    case GridKind::GoldenLinogram: {
      require_polar(req);
      for (int j = -req.R / 2; j < req.R / 2; ++j) {
        const double rho = (2.0 * j + 1.0) / (2.0 * req.R);
        for (int a = 0; a < req.T; ++a) {
          const double theta = golden_angle(a);
          if (theta >= 0.0) {
            pts.push_back({rho, rho * std::tan(theta - pi / 4.0), 0.0});
          } else {
            pts.push_back({-rho / std::tan(theta - pi / 4.0), rho, 0.0});
          }
        }
      }
      break;
    }
  }
  return SamplingSet(req.d, std::move(pts));
}

}  // namespace infft
