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


#include "infft/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>

#include "infft/io.hpp"
#include "infft/testdata.hpp"

namespace infft {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Fn>
double median_time(int runs, Fn fn) {
  std::vector<double> t;
  for (int i = 0; i < runs; ++i) {
    const auto t0 = Clock::now();
    fn();
    t.push_back(seconds_since(t0));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

constexpr std::size_t kNdftCost = std::size_t{1} << 26;

// Independent streams for grids and coefficients of one repetition.
std::uint64_t stream_seed(std::uint64_t seed, int rep, std::uint64_t salt) {
  return seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(rep) * 0xBF58476D1CE4E5B9ull + salt;
}

std::vector<double> real_parts(const ComplexVector& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
  return r;
}

std::vector<double> abs_diff(const ComplexVector& a, const ComplexVector& b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::abs(a[i] - b[i]);
  return r;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

DensityOptions density_options(const ExperimentConfig& cfg) {
  DensityOptions o;
  o.cg.maxit = cfg.cg_maxit;
  return o;
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

FourierOperator make_operator(const SamplingSet& sampling,
                              const FrequencyBox& box) {
  const bool small = sampling.size() * box.size() <= kNdftCost ||
                     2 * accurate_window(box.bandwidth()).cutoff() < 20;
  if (small) return FourierOperator(sampling, box, TransformRoute::Ndft);
  return FourierOperator(sampling, box, accurate_window(box.bandwidth()));
}

std::vector<TrigPolyRow> run_trig_poly(const ExperimentConfig& cfg) {
  std::vector<TrigPolyRow> rows;
  const DensityOptions opts = density_options(cfg);
  for (int M : cfg.sweep) {
    const FrequencyBox box(cfg.grid.d, M);
    for (WeightMethod method : cfg.methods) {
      TrigPolyRow row;
      row.d = cfg.grid.d;
      row.M = M;
      row.method = method;
      for (int rep = 0; rep < cfg.reps; ++rep) {
        GridRequest req = cfg.grid;
        req.seed = stream_seed(cfg.seed, rep, 1);
        const SamplingSet sampling = generate_grid(req);
        Rng rng(stream_seed(cfg.seed, rep, 2));
        CoefficientVector fhat(box);
        for (auto& v : fhat.values) v = rng.uniform(1.0, 10.0);
        const FourierOperator op = make_operator(sampling, box);
        const SampleVector f(op.forward(fhat.values));
        const WeightVector w = baseline_weights(method, sampling, box, opts);
        const CoefficientVector h = infft_density(op, w, f);
        row.N = sampling.size();
        row.e2 = std::max(row.e2, relative_error(h, fhat, Norm::L2));
        row.einf = std::max(row.einf, relative_error(h, fhat, Norm::Max));
        row.epsilon = std::max(row.epsilon, w.epsilon);
        row.cg_iters = std::max(row.cg_iters, w.cg_iterations);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<FrobeniusRow> run_frobenius(const ExperimentConfig& cfg) {
  std::vector<FrobeniusRow> rows;
  const FrequencyBox box(2, cfg.M);
  for (int mu : cfg.sweep) {
    GridRequest req = cfg.grid;
    req.R = 1 << mu;
    req.T = 2 * req.R;
    const SamplingSet sampling = generate_grid(req);
    for (WindowKind kind : {WindowKind::BSpline, WindowKind::Dirichlet}) {
      FrobeniusRow row;
      row.grid = req.kind;
      row.R = req.R;
      row.T = req.T;
      row.window = kind;
      row.m = cfg.m;
      row.sigma = cfg.sigma;
      row.N = sampling.size();
      row.n = std::numeric_limits<double>::quiet_NaN();
      row.n_opt = std::numeric_limits<double>::quiet_NaN();
      if (sampling.size() * box.size() > kFrobeniusGuard) {
        row.skipped = "dense guard exceeded";
        rows.push_back(row);
        continue;
      }
      try {
        const WindowSpec window(kind, cfg.M, cfg.sigma, cfg.m);
        if (kind == WindowKind::BSpline) {
          row.n = frobenius_deviation(sampling, box, NfftPlan(sampling, box, window));
        }
        row.n_opt = frobenius_deviation(sampling, box,
                                        optimize_spreader(sampling, box, window));
      } catch (const DomainError& e) {
        row.skipped = e.what();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

PhantomRow phantom_row(int M, const ExperimentConfig& cfg) {
  GridRequest req;
  req.kind = GridKind::Linogram;
  req.d = 2;
  req.R = 2 * M;
  req.T = 2 * req.R;
  const SamplingSet sampling = generate_grid(req);
  const FrequencyBox box(2, M);
  const CoefficientVector fhat = shepp_logan(M).as_coefficients();
  const SampleVector f(make_operator(sampling, box).forward(fhat.values));

  PhantomRow row;
  row.M = M;
  row.N = sampling.size();

  auto t0 = Clock::now();
  const WeightVector w = exact_weights(sampling, box, density_options(cfg));
  const NfftPlan plan(sampling, box, accurate_window(M));
  row.alg4_precompute = seconds_since(t0);
  row.alg4_cg_iters = w.cg_iterations;
  row.alg4_epsilon = w.epsilon;
  CoefficientVector h4(box);
  row.alg4_reconstruct = median_time(3, [&] { h4 = infft_density(plan, w, f); });
  row.alg4_e2 = relative_error(h4, fhat, Norm::L2);

  const WindowSpec window(cfg.window, M, cfg.sigma, cfg.m);
  t0 = Clock::now();
  const OptimizedSpreader spreader = optimize_spreader(sampling, box, window);
  row.alg6_precompute = seconds_since(t0);
  CoefficientVector h6(box);
  row.alg6_reconstruct = median_time(3, [&] { h6 = infft_opt(spreader, window, f); });
  row.alg6_e2 = relative_error(h6, fhat, Norm::L2);
  return row;
}

PhantomUnderdetermined phantom_underdetermined(int M, const ExperimentConfig& cfg) {
  GridRequest req;
  req.kind = GridKind::Linogram;
  req.d = 2;
  req.R = M;
  req.T = 2 * M;
  const SamplingSet sampling = generate_grid(req);
  const FrequencyBox box(2, M);
  const CoefficientVector fhat = shepp_logan(M).as_coefficients();
  const SampleVector f(make_operator(sampling, box).forward(fhat.values));
  const NfftPlan plan(sampling, box, accurate_window(M));

  PhantomUnderdetermined res;
  res.M = M;
  res.N = sampling.size();
  res.exact = real_parts(fhat.values);

  const WeightVector uniform =
      baseline_weights(WeightMethod::Uniform, sampling, box);
  const CoefficientVector hu = infft_density(plan, uniform, f);
  res.uniform_e2 = relative_error(hu, fhat, Norm::L2);
  res.uniform = real_parts(hu.values);

  const WeightVector w = exact_weights(sampling, box, density_options(cfg));
  res.alg4_cg_iters = w.cg_iterations;
  const CoefficientVector h4 = infft_density(plan, w, f);
  res.alg4_e2 = relative_error(h4, fhat, Norm::L2);
  res.alg4 = real_parts(h4.values);

  const WindowSpec window(cfg.window, M, cfg.sigma, cfg.m);
  const OptimizedSpreader spreader = optimize_spreader(sampling, box, window);
  const CoefficientVector h6 = infft_opt(spreader, window, f);
  res.alg6_e2 = relative_error(h6, fhat, Norm::L2);
  res.alg6 = real_parts(h6.values);
  return res;
}

PhantomResult run_phantom(const ExperimentConfig& cfg) {
  PhantomResult res;
  for (int M : cfg.sweep) res.table.push_back(phantom_row(M, cfg));
  if (cfg.under_M > 0) res.under = phantom_underdetermined(cfg.under_M, cfg);
  return res;
}

BandlimitedResult run_bandlimited(const ExperimentConfig& cfg) {
  const int M = cfg.M;
  const FrequencyBox box(2, M);
  const TriangularPulse pulse(2, M, cfg.pulse_width);
  const CoefficientVector fhat = pulse.coefficients();
  const DensityOptions opts = density_options(cfg);
  BandlimitedResult res;

  auto max_error = [&](const CoefficientVector& h) {
    double e = 0.0;
    for (std::size_t i = 0; i < h.values.size(); ++i) {
      e = std::max(e, std::abs(h.values[i] - fhat.values[i]));
    }
    return e;
  };

  {
    GridRequest eq = cfg.grid;
    eq.kind = GridKind::Equispaced;
    const SamplingSet sampling = generate_grid(eq);
    const NfftPlan plan(sampling, box, accurate_window(M));
    const WeightVector w = baseline_weights(WeightMethod::Uniform, sampling, box);
    res.baseline = max_error(infft_density(plan, w, pulse.samples(sampling)));
  }

  const SamplingSet sampling = generate_grid(cfg.grid);
  const SampleVector f = pulse.samples(sampling);
  const NfftPlan plan(sampling, box, accurate_window(M));
  for (WeightMethod method : cfg.methods) {
    const WeightVector w = baseline_weights(method, sampling, box, opts);
    const CoefficientVector h = infft_density(plan, w, f);
    res.rows.push_back({to_string(method), max_error(h), abs_diff(h.values, fhat.values)});
  }
  const WindowSpec window(cfg.window, M, cfg.sigma, cfg.m);
  const OptimizedSpreader spreader = optimize_spreader(sampling, box, window);
  const CoefficientVector h6 = infft_opt(spreader, window, f);
  res.rows.push_back({"alg6", max_error(h6), abs_diff(h6.values, fhat.values)});
  return res;
}

ExperimentConfig resolve_config(ExperimentConfig cfg) {
  const std::string& e = cfg.experiment;
  if (cfg.reps < 1) throw DomainError("repetitions must be positive");
  if (e == "trig-poly") {
    if (cfg.grid.n == 0) cfg.grid.n = 1 << (9 - cfg.grid.d);
    if (cfg.sweep.empty()) {
      const int nmax = cfg.grid.d == 1 ? 512 : cfg.grid.d == 2 ? 64 : 16;
      for (int M = 2; M <= nmax; M *= 2) cfg.sweep.push_back(M);
    }
    if (cfg.methods.empty()) cfg.methods = {WeightMethod::ExactQuadrature};
    if (is_polar_kind(cfg.grid.kind)) throw DomainError("trig-poly needs a tensor grid");
  } else if (e == "frobenius") {
    if (cfg.M == 0) cfg.M = 12;
    cfg.grid.d = 2;
    if (!is_polar_kind(cfg.grid.kind)) throw DomainError("frobenius needs a polar-type grid");
    if (cfg.sweep.empty()) cfg.sweep = {2, 3, 4, 5};
    for (int mu : cfg.sweep) {
      if (mu < 1 || mu > 12) throw DomainError("mu must lie in 1..12");
    }
  } else if (e == "phantom") {
    if (cfg.sweep.empty()) cfg.sweep = {8, 16, 32};
    cfg.grid.kind = GridKind::Linogram;
    cfg.grid.d = 2;
    for (int M : cfg.sweep) {
      if (M > 128) throw DomainError("phantom sweep is capped at M = 128");
      (void)shepp_logan(M);
    }
    if (cfg.under_M > 128) throw DomainError("phantom sweep is capped at M = 128");
    if (cfg.under_M > 0 && cfg.profile_row < 0) cfg.profile_row = 13 * cfg.under_M / 16;
  } else if (e == "bandlimited") {
    if (cfg.M == 0) cfg.M = 64;
    cfg.grid.d = 2;
    if (cfg.grid.kind == GridKind::Equispaced) cfg.grid.kind = GridKind::Jittered;
    if (is_polar_kind(cfg.grid.kind)) throw DomainError("bandlimited needs a tensor grid");
    if (cfg.grid.n == 0) cfg.grid.n = 144;
    if (cfg.methods.empty()) {
      cfg.methods = {WeightMethod::ExactQuadrature, WeightMethod::Wcf,
                     WeightMethod::Pcf, WeightMethod::Uniform};
    }
    (void)TriangularPulse(2, cfg.M, cfg.pulse_width);
  } else if (e == "weights" || e == "invert") {
    if (cfg.M == 0) throw DomainError("--M is required");
    if (is_polar_kind(cfg.grid.kind)) {
      cfg.grid.d = 2;
      if (cfg.grid.R == 0) cfg.grid.R = 2 * cfg.M;
      if (cfg.grid.T == 0) cfg.grid.T = 2 * cfg.grid.R;
    } else if (cfg.grid.n == 0) {
      cfg.grid.n = 2 * cfg.M;
    }
    if (cfg.methods.empty()) cfg.methods = {WeightMethod::ExactQuadrature};
    (void)FrequencyBox(cfg.grid.d, cfg.M);
    if (e == "invert") (void)WindowSpec(cfg.window, cfg.M, cfg.sigma, cfg.m);
  } else {
    throw DomainError("unknown experiment '" + e + "'");
  }
  if (cfg.grid.seed == 0) cfg.grid.seed = cfg.seed;
  return cfg;
}

std::string manifest_json(const ExperimentConfig& cfg,
                          const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["version"] = kLibraryVersion;
  j["experiment"] = cfg.experiment;
  j["grid"] = {{"kind", to_string(cfg.grid.kind)}, {"d", cfg.grid.d},
               {"n", cfg.grid.n}, {"R", cfg.grid.R}, {"T", cfg.grid.T},
               {"seed", cfg.grid.seed}};
  j["M"] = cfg.M;
  j["sigma"] = cfg.sigma;
  j["m"] = cfg.m;
  j["window"] = to_string(cfg.window);
  std::vector<std::string> methods;
  for (auto m : cfg.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["seed"] = cfg.seed;
  j["reps"] = cfg.reps;
  j["sweep"] = cfg.sweep;
  j["cg_maxit"] = cfg.cg_maxit;
  j["profile_row"] = cfg.profile_row;
  j["pulse_width"] = cfg.pulse_width;
  j["under_M"] = cfg.under_M;
  j["caps"] = "phantom M <= 128";
  j["outputs"] = outputs;
  return j.dump(2);
}

ExperimentConfig config_from_manifest(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    const auto& g = j.at("grid");
    cfg.grid.kind = parse_grid_kind(g.at("kind").get<std::string>());
    cfg.grid.d = g.at("d").get<int>();
    cfg.grid.n = g.at("n").get<int>();
    cfg.grid.R = g.at("R").get<int>();
    cfg.grid.T = g.at("T").get<int>();
    cfg.grid.seed = g.at("seed").get<std::uint64_t>();
    cfg.M = j.at("M").get<int>();
    cfg.sigma = j.at("sigma").get<double>();
    cfg.m = j.at("m").get<int>();
    cfg.window = parse_window_kind(j.at("window").get<std::string>());
    for (const auto& m : j.at("methods")) {
      cfg.methods.push_back(parse_weight_method(m.get<std::string>()));
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.reps = j.at("reps").get<int>();
    cfg.sweep = j.at("sweep").get<std::vector<int>>();
    cfg.cg_maxit = j.at("cg_maxit").get<std::size_t>();
    cfg.profile_row = j.at("profile_row").get<int>();
    cfg.pulse_width = j.at("pulse_width").get<int>();
    cfg.under_M = j.at("under_M").get<int>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid manifest: ") + e.what());
  }
}

std::vector<std::string> run_experiment(const ExperimentConfig& cfg_in) {
  const ExperimentConfig cfg = resolve_config(cfg_in);
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out + "'");
  std::vector<std::string> outputs;
  auto path = [&](const std::string& name) {
    outputs.push_back(name);
    return join_path(cfg.out, name);
  };
  const std::string& e = cfg.experiment;

  if (e == "trig-poly") {
    CsvWriter csv({"d", "M", "N", "method", "e2", "einf", "epsilon", "cg_iters"});
    for (const auto& r : run_trig_poly(cfg)) {
      csv.add_row({std::to_string(r.d), std::to_string(r.M), std::to_string(r.N),
                   to_string(r.method), fmt(r.e2), fmt(r.einf), fmt(r.epsilon),
                   std::to_string(r.cg_iters)});
    }
    csv.save(path("trig_poly.csv"));
  } else if (e == "frobenius") {
    CsvWriter csv({"grid", "R", "T", "window", "m", "sigma", "n", "n_opt", "note"});
    for (const auto& r : run_frobenius(cfg)) {
      csv.add_row({to_string(r.grid), std::to_string(r.R), std::to_string(r.T),
                   to_string(r.window), std::to_string(r.m), fmt(r.sigma), fmt(r.n),
                   fmt(r.n_opt), r.skipped});
    }
    csv.save(path("frobenius.csv"));
  } else if (e == "phantom") {
    const PhantomResult res = run_phantom(cfg);
    CsvWriter csv({"M", "N", "alg4_e2", "alg4_precompute_s", "alg4_reconstruct_s",
                   "alg6_e2", "alg6_precompute_s", "alg6_reconstruct_s"});
    for (const auto& r : res.table) {
      csv.add_row({std::to_string(r.M), std::to_string(r.N), fmt(r.alg4_e2),
                   fmt(r.alg4_precompute), fmt(r.alg4_reconstruct), fmt(r.alg6_e2),
                   fmt(r.alg6_precompute), fmt(r.alg6_reconstruct)});
    }
    csv.save(path("phantom_table.csv"));
    if (cfg.under_M > 0) {
      const auto& u = res.under;
      CsvWriter under({"M", "N", "uniform_e2", "alg4_e2", "alg6_e2", "alg4_cg_iters"});
      under.add_row({std::to_string(u.M), std::to_string(u.N), fmt(u.uniform_e2),
                     fmt(u.alg4_e2), fmt(u.alg6_e2), std::to_string(u.alg4_cg_iters)});
      under.save(path("phantom_underdetermined.csv"));
      const int M = u.M;
      const int p = std::clamp(cfg.profile_row, 0, M - 1);
      CsvWriter prof({"q", "exact", "uniform", "alg4", "alg6"});
      for (int q = 0; q < M; ++q) {
        const std::size_t i = static_cast<std::size_t>(p) * M + q;
        prof.add_row({std::to_string(q), fmt(u.exact[i]), fmt(u.uniform[i]),
                      fmt(u.alg4[i]), fmt(u.alg6[i])});
      }
      prof.save(path("phantom_row_profile.csv"));
      const std::pair<const char*, const std::vector<double>*> images[] = {
          {"exact", &u.exact}, {"uniform", &u.uniform}, {"alg4", &u.alg4},
          {"alg6", &u.alg6}};
      for (const auto& [name, field] : images) {
        write_pgm(*field, M, M, path(std::string("phantom_") + name + ".pgm"));
        write_raw_f64(*field, path(std::string("phantom_") + name + ".f64"));
      }
    }
  } else if (e == "bandlimited") {
    const BandlimitedResult res = run_bandlimited(cfg);
    CsvWriter csv({"method", "max_error", "ratio_to_equispaced"});
    csv.add_row({"equispaced", fmt(res.baseline), fmt(1.0)});
    for (const auto& r : res.rows) {
      csv.add_row({r.method, fmt(r.max_error), fmt(r.max_error / res.baseline)});
      write_pgm(r.error_field, cfg.M, cfg.M, path("bandlimited_" + r.method + ".pgm"));
      write_raw_f64(r.error_field, path("bandlimited_" + r.method + ".f64"));
    }
    csv.save(path("bandlimited.csv"));
  } else if (e == "weights") {
    const SamplingSet sampling = generate_grid(cfg.grid);
    const FrequencyBox box(cfg.grid.d, cfg.M);
    write_points_csv(sampling, path("points.csv"));
    std::string report;
    for (WeightMethod m : cfg.methods) {
      const WeightVector w = baseline_weights(m, sampling, box, density_options(cfg));
      write_weights_csv(w.values, path(std::string("weights_") + to_string(m) + ".csv"));
      report += residual_report_json(w) + "\n";
    }
    write_text(report, path("residuals.jsonl"));
  } else if (e == "invert") {
    const SamplingSet sampling = generate_grid(cfg.grid);
    const FrequencyBox box(cfg.grid.d, cfg.M);
    const WindowSpec window(cfg.window, cfg.M, cfg.sigma, cfg.m);
    const OptimizedSpreader s = optimize_spreader(sampling, box, window);
    write_points_csv(sampling, path("points.csv"));
    save_spreader(s, path("spreader.bin"));
    CsvWriter csv({"empty_columns", "ridge_columns", "fallback_columns", "max_epsilon",
                   "max_imag_ratio"});
    csv.add_row({std::to_string(s.report.empty_columns),
                 std::to_string(s.report.ridge_columns),
                 std::to_string(s.report.fallback_columns), fmt(s.report.max_epsilon),
                 fmt(s.report.max_imag_ratio)});
    csv.save(path("spreader_report.csv"));
  }
  outputs.push_back("manifest.json");
  write_text(manifest_json(cfg, outputs), join_path(cfg.out, "manifest.json"));
  return outputs;
}

}  // namespace infft
