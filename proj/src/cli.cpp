// Copyright 2026 The modalpca Authors.
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

#include "modalpca/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modalpca/baseline.hpp"
#include "modalpca/estimator.hpp"
#include "modalpca/io.hpp"
#include "modalpca/parallel.hpp"
#include "modalpca/rng.hpp"
#include "modalpca/robustness.hpp"
#include "modalpca/synth.hpp"

namespace modalpca::cli {

namespace {

using nlohmann::json;

// --- option groups ---------------------------------------------------------------

struct ScenarioOpts {
  std::string family = "gaussian-diag";
  int n = 200;
  int d = 20;
  double eps = 0.0;
  std::uint64_t seed = 0;
  double sigma_z = 0.0;  // 0 = unset
  double box_low = -1.0;
  double box_high = 1.5;

  void attach(CLI::App* app) {
    app->add_option("--family,--scenario", family, "gaussian-diag | laplace-scaled | lbbp-3d");
    app->add_option("--n", n, "sample size");
    app->add_option("--d", d, "dimension");
    app->add_option("--eps", eps, "outlier fraction");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--sigma-z", sigma_z, "third-coordinate scale (lbbp-3d)");
    app->add_option("--box-low", box_low, "outlier box lower bound");
    app->add_option("--box-high", box_high, "outlier box upper bound");
  }

  synth::ScenarioSpec spec() const {
    synth::ScenarioSpec s;
    s.family = synth::family_from_string(family);
    s.n = n;
    s.d = d;
    s.outlier_fraction = eps;
    s.seed = seed;
    s.box_low = box_low;
    s.box_high = box_high;
    if (sigma_z != 0.0) s.sigma_z = sigma_z;
    s.validate();
    return s;
  }
};

struct FitOpts {
  int grid_points = 21;
  int grid_cycles = 10;
  double mad_scale = 1.0;
  double outer_tol = 1e-7;
  int max_outer = 200;

  void attach(CLI::App* app) {
    app->add_option("--grid-points", grid_points, "angles per plane in the grid initializer");
    app->add_option("--grid-cycles", grid_cycles, "refinement cycles of the grid initializer");
    app->add_option("--mad-scale", mad_scale, "MAD multiplier in the bandwidth rule");
    app->add_option("--outer-tol", outer_tol, "relative objective change to stop");
    app->add_option("--max-outer", max_outer, "outer iterations per component");
  }

  estimator::FitConfig config(int components, std::uint64_t seed) const {
    estimator::FitConfig c;
    c.n_components = components;
    c.grid.n_grid = grid_points;
    c.grid.n_cycles = grid_cycles;
    c.grid.mad_scale = mad_scale;
    c.mad_scale = mad_scale;
    c.outer_tol = outer_tol;
    c.max_outer = max_outer;
    c.seed = seed;
    if (!(mad_scale > 0.0)) throw ConfigError("mad-scale must be positive");
    c.grid.validate();
    return c;
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const std::string& field) {
  std::vector<T> out;
  for (const auto& tok : split_list(s)) {
    T v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ConfigError(field + ": cannot parse '" + tok + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(field + " must not be empty");
  return out;
}

std::string json_scalar(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) return io::format_real(v.get<double>());
  throw ConfigError("config key '" + key + "' has an unsupported value");
}

// Fills options not given on the command line from a JSON object whose keys
// are long option names without the leading dashes.
void apply_config(CLI::App* app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [raw, value] : j.items()) {
    std::string key = raw;
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = key == "config" ? nullptr : app->get_option_no_throw("--" + key);
    if (!opt) throw ConfigError("unknown config key '" + raw + "'");
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        text += (i ? "," : "") + json_scalar(value[i], raw);
      }
    } else {
      text = json_scalar(value, raw);
    }
    opt->add_result(text);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config key '" + raw + "': " + e.what());
    }
  }
}

std::ostream& sink(const std::string& path, std::ostream& out, std::ofstream& file) {
  if (path.empty() || path == "-") return out;
  file.open(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open '" + path + "' for writing");
  return file;
}

// --- commands -------------------------------------------------------------------

struct FitCmd {
  ScenarioOpts scenario;
  FitOpts fit;
  std::string input;
  bool header = false;
  std::string label_column;
  int components = 0;
  std::string model_path = "model.json";

  int run(std::ostream& out) {
    DataMatrix data;
    std::optional<synth::Scenario> sc;
    if (!input.empty()) {
      io::CsvOptions o;
      o.header = header;
      if (!label_column.empty()) o.label_column = label_column;
      data = io::read_csv(input, o).data;
    } else {
      sc = synth::generate(scenario.spec());
      data = sc->data;
    }
    const int d = static_cast<int>(data.cols());
    int r = components;
    if (r == 0) r = sc ? std::max(1, d - static_cast<int>(sc->ground_truth.rank())) : 1;
    const auto cfg = fit.config(r, scenario.seed);
    cfg.validate(data.cols());

    const auto model = estimator::fit(data, cfg);
    io::write_model(model, model_path);
    for (const auto& c : model.components) {
      out << "component " << c.index << " mode " << io::format_real(c.mode) << " objective "
          << io::format_real(c.objective) << " iterations " << c.iterations << '\n';
    }
    if (sc) {
      const Eigen::Index k = sc->ground_truth.rank();
      const Eigen::MatrixXd pcs = r < d ? model.principal_basis()
                                        : model.principal_basis(static_cast<int>(k));
      out << "specdist " << io::format_real(baseline::specdist(baseline::SubspaceBasis(pcs), sc->ground_truth))
          << '\n';
    }
    return kExitOk;
  }
};

struct BenchCmd {
  ScenarioOpts scenario;
  FitOpts fit;
  std::string ns;
  std::string epsilons = "0,0.1,0.2,0.3";
  int seeds = 20;
  std::string methods = "mpca,cpca";
  std::string out_path;

  int run(std::ostream& out) {
    const auto eps_list = parse_list<double>(epsilons, "eps-list");
    const auto n_list = ns.empty() ? std::vector<int>{scenario.n} : parse_list<int>(ns, "n-list");
    const auto method_list = split_list(methods);
    if (method_list.empty()) throw ConfigError("methods must not be empty");
    for (const auto& m : method_list) {
      if (m != "mpca" && m != "cpca") throw ConfigError("methods: unknown method '" + m + "'");
    }
    if (seeds < 1) throw ConfigError("seeds must be positive");
    for (double e : eps_list) {
      ScenarioOpts probe = scenario;
      probe.eps = e;
      for (int n : n_list) {
        probe.n = n;
        probe.spec();
      }
    }
    fit.config(1, scenario.seed);

    struct Cell {
      int n;
      double eps;
      int s;
    };
    std::vector<Cell> cells;
    for (int n : n_list) {
      for (double e : eps_list) {
        for (int s = 0; s < seeds; ++s) cells.push_back({n, e, s});
      }
    }
    const auto results = parallel::map_indices<std::vector<io::BenchRow>>(cells.size(), [&](std::size_t i) {
      const Cell& c = cells[i];
      ScenarioOpts o = scenario;
      o.n = c.n;
      o.eps = c.eps;
      o.seed = stream_seed(scenario.seed, "bench", static_cast<std::uint64_t>(c.s));
      const auto sc = synth::generate(o.spec());
      const int d = static_cast<int>(sc.data.cols());
      const int k = static_cast<int>(sc.ground_truth.rank());
      std::vector<io::BenchRow> rows;
      for (const auto& m : method_list) {
        double dist;
        if (m == "mpca") {
          const auto model = estimator::fit(sc.data, fit.config(std::max(1, d - k), o.seed));
          const Eigen::MatrixXd pcs = d - k >= 1 ? model.principal_basis() : model.principal_basis(k);
          dist = baseline::specdist(baseline::SubspaceBasis(pcs), sc.ground_truth);
        } else {
          dist = baseline::specdist(baseline::cpca_fit(sc.data, k).basis, sc.ground_truth);
        }
        rows.push_back({m, c.eps, c.n, o.seed, dist});
      }
      return rows;
    });
    std::vector<io::BenchRow> all;
    for (const auto& r : results) all.insert(all.end(), r.begin(), r.end());
    std::ofstream file;
    io::write_bench_csv(sink(out_path, out, file), all);
    return kExitOk;
  }
};

struct InfluenceCmd {
  ScenarioOpts scenario;
  FitOpts fit;
  std::string method = "mpca";
  int k = 1;
  double lo = -4.0;
  double hi = 4.0;
  int resolution = 81;
  double epsilon = 1e-3;
  std::string input;
  std::string out_path;

  int run(std::ostream& out) {
    DataMatrix data;
    if (!input.empty()) {
      data = io::read_csv(input).data;
    } else {
      ScenarioOpts o = scenario;
      o.d = 2;
      data = synth::generate(o.spec()).data;
    }
    if (data.cols() != 2) throw ConfigError("influence grids are two-dimensional (d = 2)");
    if (k < 1 || k > 2) throw ConfigError("k must be 1 or 2");
    std::function<double(const Eigen::Vector2d&)> norm_at;
    if (method == "mpca") {
      const auto model = estimator::fit(data, fit.config(2, scenario.seed));
      const DataMatrix centered = robustness::mode_center(data, model);
      const Bandwidth h = model.components[static_cast<std::size_t>(k - 1)].bandwidth;
      const auto dirs = robustness::stationary_directions(centered, model.directions(), h, k);
      norm_at = [centered, dirs, h, this](const Eigen::Vector2d& u) {
        return robustness::influence_mpca(centered, dirs, u, k, h).norm;
      };
    } else if (method == "cpca") {
      if (k != 1) throw ConfigError("cpca influence is defined for the minor component (k = 1)");
      const auto refit = robustness::cpca_minor_refit();
      norm_at = [data, refit, this](const Eigen::Vector2d& u) {
        return robustness::influence_numeric(data, refit, u, epsilon).norm();
      };
    } else {
      throw ConfigError("method must be mpca or cpca");
    }
    const auto rows = robustness::influence_grid(lo, hi, resolution, norm_at);
    std::ofstream file;
    io::write_influence_csv(sink(out_path, out, file), rows);
    return kExitOk;
  }
};

struct LbbpCmd {
  ScenarioOpts scenario;
  FitOpts fit;
  double target = 0.0;
  double sigma_lo = 0.01;
  double sigma_hi = 0.6;
  std::string alphas;
  int seeds = 20;
  std::string out_path;
  std::string breakdown_path;

  int run(std::ostream& out) {
    if (scenario.sigma_z == 0.0 && target == 0.0) {
      throw ConfigError("lbbp needs sigma-z or target");
    }
    ScenarioOpts o = scenario;
    o.family = "lbbp-3d";
    o.d = 3;
    o.eps = 0.0;
    if (o.sigma_z == 0.0) o.sigma_z = sigma_hi;  // placeholder for validation only
    synth::ScenarioSpec spec = o.spec();
    const auto cfg = fit.config(1, scenario.seed);
    robustness::LbbpSearch search;
    search.seed = scenario.seed;
    search.grid = cfg.grid;

    double sigma = scenario.sigma_z;
    std::optional<robustness::LbbpReport> report;
    if (target != 0.0) {
      const auto cal = robustness::calibrate_sigma_z(target, spec, cfg, search, sigma_lo, sigma_hi);
      sigma = cal.sigma_z;
      report = cal.report;
    } else {
      report = robustness::lbbp_for_sigma(spec, sigma, cfg, search);
    }
    std::ofstream file;
    io::write_lbbp_csv(sink(out_path, out, file), {*report});
    if (!out_path.empty() && out_path != "-") out << "sigma_z " << io::format_real(sigma) << '\n';

    if (!alphas.empty()) {
      if (seeds < 1) throw ConfigError("seeds must be positive");
      robustness::BreakdownConfig bc;
      bc.scenario = spec;
      bc.scenario.sigma_z = sigma;
      bc.alphas = parse_list<double>(alphas, "alphas");
      for (int s = 0; s < seeds; ++s) {
        bc.seeds.push_back(stream_seed(scenario.seed, "breakdown", static_cast<std::uint64_t>(s)));
      }
      bc.fit = cfg;
      const auto rows = robustness::breakdown_experiment(bc);
      std::ofstream bfile;
      io::write_breakdown_csv(sink(breakdown_path, out, bfile), rows);
    }
    return kExitOk;
  }
};

struct SynthCmd {
  ScenarioOpts scenario;
  std::string out_path;

  int run(std::ostream& out) {
    const auto sc = synth::generate(scenario.spec());
    std::ofstream file;
    io::write_dataset(sink(out_path, out, file), sc.data, &sc.inlier_mask);
    return kExitOk;
  }
};

struct SpecdistCmd {
  std::string a;
  std::string b;

  int run(std::ostream& out) {
    const auto ba = io::read_basis(a);
    const auto bb = io::read_basis(b);
    if (ba.dim() != bb.dim()) throw ConfigError("bases live in different dimensions");
    out << io::format_real(baseline::specdist(ba, bb)) << '\n';
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modal PCA: minor components by kernel-density maximization"};
  app.require_subcommand(1);

  std::string config_path;
  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file of option values (flags take precedence)");
  };

  FitCmd fit_cmd;
  auto* fit = app.add_subcommand("fit", "fit a model to a CSV file or a synthetic scenario");
  fit_cmd.scenario.attach(fit);
  fit_cmd.fit.attach(fit);
  fit->add_option("--input", fit_cmd.input, "dataset CSV");
  fit->add_flag("--header", fit_cmd.header, "the CSV has a header row");
  fit->add_option("--label-column", fit_cmd.label_column, "label column name or number");
  fit->add_option("--components", fit_cmd.components, "number of minor components");
  fit->add_option("--model", fit_cmd.model_path, "output model JSON");
  with_config(fit);

  BenchCmd bench_cmd;
  auto* bench = app.add_subcommand("bench", "specdist sweep over outlier fractions and sample sizes");
  bench_cmd.scenario.attach(bench);
  bench_cmd.fit.attach(bench);
  bench->add_option("--n-list", bench_cmd.ns, "comma-separated sample sizes");
  bench->add_option("--eps-list", bench_cmd.epsilons, "comma-separated outlier fractions");
  bench->add_option("--seeds", bench_cmd.seeds, "repetitions per cell");
  bench->add_option("--methods", bench_cmd.methods, "comma-separated subset of mpca,cpca");
  bench->add_option("--out", bench_cmd.out_path, "output CSV (default stdout)");
  with_config(bench);

  InfluenceCmd inf_cmd;
  auto* inf = app.add_subcommand("influence", "influence-function norm on a 2-D grid");
  inf_cmd.scenario.attach(inf);
  inf_cmd.fit.attach(inf);
  inf->add_option("--method", inf_cmd.method, "mpca (analytic) or cpca (numeric)");
  inf->add_option("--k", inf_cmd.k, "component index");
  inf->add_option("--lo", inf_cmd.lo, "grid lower bound");
  inf->add_option("--hi", inf_cmd.hi, "grid upper bound");
  inf->add_option("--resolution", inf_cmd.resolution, "points per axis");
  inf->add_option("--epsilon", inf_cmd.epsilon, "contamination mass of the numeric quotient");
  inf->add_option("--input", inf_cmd.input, "dataset CSV (two columns)");
  inf->add_option("--out", inf_cmd.out_path, "output CSV (default stdout)");
  with_config(inf);

  LbbpCmd lbbp_cmd;
  lbbp_cmd.scenario.n = 500;
  auto* lb = app.add_subcommand("lbbp", "breakdown-point lower bound and breakdown sweep");
  lbbp_cmd.scenario.attach(lb);
  lbbp_cmd.fit.attach(lb);
  lb->add_option("--target", lbbp_cmd.target, "calibrate sigma-z to this bound");
  lb->add_option("--sigma-lo", lbbp_cmd.sigma_lo, "calibration bracket");
  lb->add_option("--sigma-hi", lbbp_cmd.sigma_hi, "calibration bracket");
  lb->add_option("--alphas", lbbp_cmd.alphas, "comma-separated contamination fractions");
  lb->add_option("--seeds", lbbp_cmd.seeds, "repetitions per alpha");
  lb->add_option("--out", lbbp_cmd.out_path, "lbbp CSV (default stdout)");
  lb->add_option("--breakdown-out", lbbp_cmd.breakdown_path, "breakdown CSV (default stdout)");
  with_config(lb);

  SynthCmd synth_cmd;
  auto* syn = app.add_subcommand("synth", "write a synthetic dataset as CSV");
  synth_cmd.scenario.attach(syn);
  syn->add_option("--out", synth_cmd.out_path, "output CSV (default stdout)");
  with_config(syn);

  SpecdistCmd sd_cmd;
  auto* sd = app.add_subcommand("specdist", "largest principal angle between two basis files");
  sd->add_option("a", sd_cmd.a, "first basis CSV")->required();
  sd->add_option("b", sd_cmd.b, "second basis CSV")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config(sub, config_path);
    if (sub == fit) return fit_cmd.run(out);
    if (sub == bench) return bench_cmd.run(out);
    if (sub == inf) return inf_cmd.run(out);
    if (sub == lb) return lbbp_cmd.run(out);
    if (sub == syn) return synth_cmd.run(out);
    return sd_cmd.run(out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StructureError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidBasis& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace modalpca::cli
