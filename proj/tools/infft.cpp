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


// Command-line runner for the reconstruction experiments.
//
//   infft <experiment> [options]
//
// Exit status: 0 on success, 1 on invalid input, 2 on I/O failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "infft/experiments.hpp"

namespace {

std::vector<infft::WeightMethod> parse_methods(const std::vector<std::string>& names) {
  std::vector<infft::WeightMethod> out;
  for (const auto& n : names) {
    std::stringstream ss(n);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(infft::parse_weight_method(item));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct inversion of the nonequispaced fast Fourier transform"};

  std::string experiment;
  std::string grid = "random";
  std::string window = "dirichlet";
  std::vector<std::string> methods;
  std::string manifest;
  infft::ExperimentConfig cfg;
  cfg.out = "out";

  app.add_option("experiment", experiment,
                 "trig-poly | frobenius | phantom | bandlimited | weights | invert");
  app.add_option("--grid", grid,
                 "equispaced | jittered | random | polar | mpolar | linogram | "
                 "golden-polar | golden-linogram");
  app.add_option("--d", cfg.grid.d, "dimension of tensor grids")->check(CLI::Range(1, 3));
  app.add_option("--n", cfg.grid.n, "points per axis of tensor grids");
  app.add_option("--R", cfg.grid.R, "radial count of polar-type grids");
  app.add_option("--T", cfg.grid.T, "angular count of polar-type grids");
  app.add_option("--M", cfg.M, "bandwidth");
  app.add_option("--sigma", cfg.sigma, "oversampling factor");
  app.add_option("--m", cfg.m, "window truncation parameter");
  app.add_option("--window", window, "bspline | dirichlet");
  app.add_option("--method", methods,
                 "exact | voronoi | uniform | pinv | wcf | pcf | relaxed | sinc");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--reps", cfg.reps, "repetitions");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--sweep", cfg.sweep, "bandwidths, or mu with R = 2^mu for frobenius")
      ->delimiter(',');
  app.add_option("--cg-maxit", cfg.cg_maxit, "CG iteration cap (0: 4 x dimension)");
  app.add_option("--row", cfg.profile_row, "phantom row for the profile CSV");
  app.add_option("--b", cfg.pulse_width, "triangular pulse width");
  app.add_option("--under-M", cfg.under_M, "bandwidth of the underdetermined phantom run (0: skip)");
  app.add_option("--manifest", manifest, "rerun the configuration stored in a manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!manifest.empty()) {
      std::ifstream in(manifest);
      if (!in) throw infft::IoError("cannot open manifest '" + manifest + "'");
      std::stringstream text;
      text << in.rdbuf();
      const std::string out = cfg.out;
      cfg = infft::config_from_manifest(text.str());
      cfg.out = out;
    } else {
      if (experiment.empty()) throw infft::DomainError("no experiment given");
      cfg.experiment = experiment;
      cfg.grid.kind = infft::parse_grid_kind(grid);
      cfg.window = infft::parse_window_kind(window);
      cfg.methods = parse_methods(methods);
    }
    for (const auto& f : infft::run_experiment(cfg)) {
      std::cout << cfg.out << "/" << f << "\n";
    }
  } catch (const infft::IoError& e) {
    std::cerr << "infft: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "infft: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
