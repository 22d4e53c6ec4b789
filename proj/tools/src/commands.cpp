// Copyright 2026 The gravbound Authors.
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

#include "gravbound_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gravbound/calculus.hpp"
#include "gravbound/errors.hpp"
#include "gravbound/gravity_bound.hpp"
#include "gravbound/gravity_data.hpp"
#include "gravbound/kernels.hpp"
#include "gravbound/table_io.hpp"
#include "gravbound_cli/bound_tree.hpp"
#include "gravbound_cli/experiment.hpp"
#include "json.hpp"

namespace gravbound::cli {
namespace {

namespace fs = std::filesystem;

// Thrown for flag values CLI11 accepts syntactically but we reject.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

fs::path output_path(const std::string& out, const std::string& default_name) {
  if (!out.empty()) return out;
  if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
    return fs::path(dir) / default_name;
  }
  return default_name;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

InputMode input_mode(bool normalize, bool standardize) {
  if (normalize && standardize) {
    throw UsageError("--normalize-inputs and --standardize-inputs are exclusive");
  }
  if (normalize) return InputMode::kUnitSphere;
  if (standardize) return InputMode::kStandardize;
  return InputMode::kRaw;
}

template <typename T>
std::vector<T> parse_int_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  for (double v : parse_number_list(text)) {
    if (v < 0 || v != std::floor(v)) {
      throw UsageError(std::string(flag) + " expects nonnegative integers");
    }
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw UsageError(std::string(flag) + " is empty");
  return out;
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  out << text;
  if (!path.empty()) atomic_write(path, text);
}

// ---------------------------------------------------------------------------
// gen-data

struct GenDataOptions {
  std::string task = "gravity";
  int bodies = 0;
  int examples = 1000;
  std::uint64_t seed = 0;
  double min_dist = 0.1;
  double mass_max = 10.0;
  int dim = 5;
  int threads = 0;
  std::string out;
};

void gen_poly(const GenDataOptions& o, const fs::path& path, std::ostream& out) {
  if (o.dim < 1) throw UsageError("--dim must be >= 1");
  std::mt19937_64 beta_gen(o.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> beta(static_cast<std::size_t>(o.dim));
  double norm = 0.0;
  for (auto& b : beta) {
    b = normal(beta_gen);
    norm += b * b;
  }
  for (auto& b : beta) b /= std::sqrt(norm);
  NumericTable table;
  for (int c = 1; c <= o.dim; ++c) table.header.push_back("x_" + std::to_string(c));
  table.header.push_back("label");
  for (int i = 0; i < o.examples; ++i) {
    std::mt19937_64 gen(mix_seed(o.seed, static_cast<std::uint64_t>(i)));
    std::vector<double> x(static_cast<std::size_t>(o.dim));
    double xn = 0.0;
    for (auto& v : x) {
      v = normal(gen);
      xn += v * v;
    }
    double dot = 0.0;
    for (int c = 0; c < o.dim; ++c) {
      x[static_cast<std::size_t>(c)] /= std::sqrt(xn);
      dot += beta[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
    }
    table.values.insert(table.values.end(), x.begin(), x.end());
    table.values.push_back(dot * dot);
  }
  atomic_write(path, format_numeric_csv(table));
  nlohmann::ordered_json meta;
  meta["task"] = "poly";
  meta["target"] = "(beta . x)^2, x uniform on the unit sphere";
  meta["dim"] = o.dim;
  meta["count"] = o.examples;
  meta["seed"] = o.seed;
  meta["beta"] = beta;
  atomic_write(metadata_path(path), meta.dump(2) + "\n");
  out << "wrote " << o.examples << " rows to " << path.string() << "\n";
}

void gen_data(const GenDataOptions& o, std::ostream& out) {
  if (o.examples < 1) throw UsageError("--examples must be >= 1");
  if (o.task == "poly") {
    gen_poly(o, output_path(o.out, "poly_d" + std::to_string(o.dim) + ".csv"), out);
    return;
  }
  if (o.task != "gravity") throw UsageError("--task must be gravity or poly");
  if (o.bodies < 1) throw UsageError("--bodies must be >= 1");
  const fs::path path = output_path(
      o.out, "gravity_k" + std::to_string(o.bodies) + "_n" + std::to_string(o.examples) +
                 "_s" + std::to_string(o.seed) + ".csv");
  const SamplingParams params{o.min_dist, o.mass_max};
  const auto data = generate_dataset(o.bodies, static_cast<std::size_t>(o.examples), o.seed,
                                     params, o.threads);
  write_dataset(data, path);
  atomic_write(metadata_path(path), dataset_metadata(data, o.seed, params));
  out << "wrote " << data.size() << " rows to " << path.string() << "\n";
}

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string data;
  std::string model = "kernel";
  std::string activation = "relu";
  bool bias = false;
  std::string kernel = "modified-relu";
  int width = 1000;
  std::uint64_t seed = 0;
  double test_fraction = 0.1;
  double sigma_sq = 0.0;
  bool normalize = false;
  bool standardize = false;
  bool no_diagnostics = false;
  std::string out;
};

void fit(const FitOptions& o, std::ostream& out) {
  if (!fs::exists(o.data)) throw Error("file not found: " + o.data);
  FitConfig config;
  if (o.model == "net") {
    if (o.activation == "relu") {
      config.model = o.bias ? ModelKind::kReluBiasNet : ModelKind::kReluNet;
    } else if (o.activation == "exp") {
      config.model = ModelKind::kExpNet;
    } else {
      throw UsageError("--activation must be relu or exp");
    }
  } else if (auto m = parse_model(o.model)) {
    config.model = *m;
  } else {
    throw UsageError("unknown --model '" + o.model + "'");
  }
  const auto kernel = parse_kernel(o.kernel);
  if (!kernel) throw UsageError("unknown --kernel '" + o.kernel + "'");
  config.kernel = *kernel;
  config.input_mode = input_mode(o.normalize, o.standardize);
  config.width = o.width;
  config.seed = o.seed;
  config.sigma_sq = o.sigma_sq;
  config.diagnostics = !o.no_diagnostics;
  const NumericTable table = read_numeric_csv(o.data);
  if (!table.header.empty() && table.header.front() == "m_target") {
    config.k = static_cast<int>((table.cols() - 1) / 4) - 1;
  }
  const ResultRow row = fit_and_evaluate(split_table(table, o.test_fraction), config);
  emit(out, results_header() + "\n" + format_result_row(row) + "\n", o.out);
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string bodies = "5,10,20";
  int n_train = 50000;
  int n_test = 5000;
  std::string models = "relu-net,relu-bias-net,exp-net";
  int width = 1000;
  std::string seeds = "0,1,2";
  std::uint64_t data_seed = 2024;
  double min_dist = 0.1;
  double mass_max = 10.0;
  bool normalize = false;
  bool standardize = false;
  std::string out;
};

void sweep(const SweepOptions& o, std::ostream& out) {
  SweepConfig config;
  config.k_list = parse_int_list<int>(o.bodies, "--bodies");
  config.n_train = o.n_train;
  config.n_test = o.n_test;
  config.models.clear();
  std::stringstream names(o.models);
  for (std::string name; std::getline(names, name, ',');) {
    const auto m = parse_model(name);
    if (!m) throw UsageError("unknown model '" + name + "'");
    config.models.push_back(*m);
  }
  config.width = o.width;
  config.seeds = parse_int_list<std::uint64_t>(o.seeds, "--seeds");
  config.data_seed = o.data_seed;
  config.sampling = {o.min_dist, o.mass_max};
  config.input_mode = input_mode(o.normalize, o.standardize);
  if (o.n_train < 1 || o.n_test < 1 || o.width < 1 || config.models.empty()) {
    throw UsageError("sweep counts must be positive and models nonempty");
  }
  const std::string text = format_sweep(run_sweep(config));
  const fs::path path = output_path(o.out, "sweep.csv");
  atomic_write(path, text);
  out << text;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
  double R = 1.0;
  int k = 2;
  double eps = 0.1;
  double delta = kDefaultDelta;
  std::string kernel;
  double r = 1.0;
  double s = 2.0;
  bool cross_check = false;
  std::string coeffs;
  double beta = 1.0;
  double radius = 0.0;
  std::string betas;
  std::string g;
  std::string h;
  std::string file;
  std::string out;
};

AuxSeries series_flag(const std::string& text, double radius_override) {
  const CoeffList list = parse_coeff_list(text);
  return aux_from_coeffs(list.coeffs, radius_override > 0.0 ? radius_override
                                                            : list.implied_radius);
}

BoundReport bounds_gravity(const BoundsOptions& o) {
  const std::string kernel = o.kernel.empty() ? "modified-relu" : o.kernel;
  BoundReport report = [&] {
    if (kernel == "modified-relu") return gravity_bound_log(o.R, o.k, o.eps, nullptr, o.delta);
    if (kernel == "gaussian") {
      const auto g = CoefficientSchedule::gaussian(o.r);
      return gravity_bound_log(o.R, o.k, o.eps, &g, o.delta);
    }
    throw UsageError("bounds gravity supports --kernel modified-relu or gaussian");
  }();
  const DegreeChoice d = choose_gravity_degree(o.R, o.k, o.eps);
  report = report.with_note("Taylor degree ceil(d) = " + std::to_string(d.degree));
  if (o.cross_check) {
    const GravityCrossCheck c = gravity_cross_check(o.R, o.k, o.eps);
    std::ostringstream note;
    note << "cross-check from auxiliary series: log sqrt(M) = " << c.log_sqrt_m_recomputed
         << " (difference " << c.log_ratio << " from the closed form)";
    report = report.with_note(note.str());
  }
  return report;
}

BoundReport bounds(const std::string& which, const BoundsOptions& o) {
  if (which == "gravity") return bounds_gravity(o);
  if (which == "univariate") {
    return univariate_bound(series_flag(o.coeffs, o.radius), o.beta, o.delta);
  }
  if (which == "monomial") return monomial_bound(parse_number_list(o.betas), o.delta);
  if (which == "kernel-weighted") {
    const CoeffList list = parse_coeff_list(o.coeffs);
    const std::string kernel = o.kernel.empty() ? "inverse-square" : o.kernel;
    const double param = kernel == "slow-decay" ? o.s : o.r;
    return kernel_weighted_bound(list.coeffs, o.beta, schedule_by_name(kernel, param), o.delta);
  }
  if (which == "product") {
    return product_bound(series_flag(o.g, 0.0), series_flag(o.h, 0.0), o.delta);
  }
  if (which == "chain") {
    return chain_bound(series_flag(o.g, 0.0), series_flag(o.h, 0.0), o.delta);
  }
  if (which == "tree") {
    const std::string text = read_text_file(o.file);
    return evaluate_bound_tree(text).with_delta(o.delta == kDefaultDelta
                                                    ? nlohmann::json::parse(text).value(
                                                          "delta", kDefaultDelta)
                                                    : o.delta);
  }
  throw UsageError("unknown bounds target '" + which + "'");
}

// ---------------------------------------------------------------------------
// kernel-coeffs

struct CoeffOptions {
  std::string kernel = "modified-relu";
  int kmax = 500;
  double r = 1.0;
  double s = 2.0;
  std::string out;
};

void kernel_coeffs(const CoeffOptions& o, std::ostream& out) {
  if (o.kmax < 0 || o.kmax > 2000) throw UsageError("--kmax must lie in [0, 2000]");
  const double asym = 2.0 * std::sqrt(std::numbers::pi);
  std::ostringstream text;
  auto rescaled = [&](double b, int k) { return b * asym * std::pow(k, 1.5); };
  if (o.kernel == "modified-relu") {
    const auto b = series_coeffs(DotProductKernel::modified_relu(0), o.kmax);
    const auto a = arccos_factor_coeffs(o.kmax);
    text << "# k b_k b_k*2sqrt(pi)*k^1.5 a_k a_k*2sqrt(pi)*k^1.5\n"
         << "# a_k: coefficients of pi - arccos((1+t)/2); b_k = (a_k + a_{k-1})/(4 pi)\n";
    for (int k = 0; k <= o.kmax; ++k) {
      const auto i = static_cast<std::size_t>(k);
      text << k << ' ' << format_double(b.b[i]) << ' ' << format_double(rescaled(b.b[i], k))
           << ' ' << format_double(a.b[i]) << ' ' << format_double(rescaled(a.b[i], k)) << '\n';
    }
  } else {
    DotProductKernel kernel = [&] {
      if (o.kernel == "gaussian") return DotProductKernel::gaussian_on_sphere(o.r, 0);
      if (o.kernel == "slow-decay") return DotProductKernel::slow_decay(o.s, 0);
      throw UsageError("--kernel must be modified-relu, gaussian or slow-decay");
    }();
    const auto b = series_coeffs(kernel, o.kmax);
    text << "# k b_k b_k*2sqrt(pi)*k^1.5\n";
    for (int k = 0; k <= o.kmax; ++k) {
      const auto i = static_cast<std::size_t>(k);
      text << k << ' ' << format_double(b.b[i]) << ' ' << format_double(rescaled(b.b[i], k))
           << '\n';
    }
  }
  emit(out, text.str(), o.out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gravbound: learnability bounds and k-body force-law experiments", "gravbound"};
  app.require_subcommand(1);
  std::function<void()> action;

  GenDataOptions gd;
  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic dataset");
  gen->add_option("--task", gd.task, "gravity or poly")->capture_default_str();
  gen->add_option("-k,--bodies", gd.bodies, "Number of source bodies");
  gen->add_option("--examples", gd.examples, "Number of rows")->capture_default_str();
  gen->add_option("--seed", gd.seed, "Base seed")->capture_default_str();
  gen->add_option("--min-dist", gd.min_dist, "Minimum target-source distance")->capture_default_str();
  gen->add_option("--mass-max", gd.mass_max, "Upper end of the mass range")->capture_default_str();
  gen->add_option("--dim", gd.dim, "Input dimension for --task poly")->capture_default_str();
  gen->add_option("--threads", gd.threads, "Worker threads (0: all cores)");
  gen->add_option("--out", gd.out, "Output CSV path");
  gen->callback([&] { action = [&] { gen_data(gd, out); }; });

  FitOptions fo;
  auto* fit_cmd = app.add_subcommand("fit", "Fit one model and report test error");
  fit_cmd->add_option("--data", fo.data, "Dataset CSV (last column is the label)")->required();
  fit_cmd->add_option("--model", fo.model,
                      "kernel, net, modified-relu-kernel, relu-net, relu-bias-net, exp-net")
      ->capture_default_str();
  fit_cmd->add_option("--activation", fo.activation, "relu or exp (with --model net)")
      ->capture_default_str();
  fit_cmd->add_flag("--bias", fo.bias, "Add a bias input (with --model net)");
  fit_cmd->add_option("--kernel", fo.kernel, "modified-relu, gaussian, relu-mc, slow-decay")
      ->capture_default_str();
  fit_cmd->add_option("--width", fo.width, "Hidden width m")->capture_default_str();
  fit_cmd->add_option("--seed", fo.seed, "Weight seed")->capture_default_str();
  fit_cmd->add_option("--test-fraction", fo.test_fraction, "Trailing fraction held out")
      ->capture_default_str();
  fit_cmd->add_option("--sigma-sq", fo.sigma_sq, "Weight variance (0: 1/input dim)");
  fit_cmd->add_flag("--normalize-inputs", fo.normalize, "Project inputs to the unit sphere");
  fit_cmd->add_flag("--standardize-inputs", fo.standardize,
                    "Z-score feature columns with training statistics");
  fit_cmd->add_flag("--no-diagnostics", fo.no_diagnostics, "Skip y^T H^-1 y and lambda_0");
  fit_cmd->add_option("--out", fo.out, "Also write the results row here");
  fit_cmd->callback([&] { action = [&] { fit(fo, out); }; });

  SweepOptions so;
  auto* sweep_cmd = app.add_subcommand("sweep", "Test error against number of bodies");
  sweep_cmd->add_option("-k,--bodies", so.bodies, "Comma-separated k values")->capture_default_str();
  sweep_cmd->add_option("--n-train", so.n_train)->capture_default_str();
  sweep_cmd->add_option("--n-test", so.n_test)->capture_default_str();
  sweep_cmd->add_option("--models", so.models)->capture_default_str();
  sweep_cmd->add_option("--width", so.width)->capture_default_str();
  sweep_cmd->add_option("--seeds", so.seeds)->capture_default_str();
  sweep_cmd->add_option("--data-seed", so.data_seed)->capture_default_str();
  sweep_cmd->add_option("--min-dist", so.min_dist)->capture_default_str();
  sweep_cmd->add_option("--mass-max", so.mass_max)->capture_default_str();
  sweep_cmd->add_flag("--normalize-inputs", so.normalize);
  sweep_cmd->add_flag("--standardize-inputs", so.standardize);
  sweep_cmd->add_option("--out", so.out, "Output CSV path");
  sweep_cmd->callback([&] { action = [&] { sweep(so, out); }; });

  BoundsOptions bo;
  double report_eps = 0.1;
  auto* bounds_cmd = app.add_subcommand("bounds", "Learnability bounds");
  bounds_cmd->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--delta", bo.delta, "Failure probability")->capture_default_str();
    c->add_option("--out", bo.out, "Also write the report here");
  };
  auto* b_grav = bounds_cmd->add_subcommand("gravity", "k-body force bound");
  b_grav->add_option("--R", bo.R, "r_max / r_min")->required();
  b_grav->add_option("-k,--k,--bodies", bo.k, "Number of bodies")->required();
  b_grav->add_option("--eps", bo.eps, "Target error")->required();
  b_grav->add_option("--kernel", bo.kernel, "modified-relu or gaussian");
  b_grav->add_option("--r", bo.r, "Gaussian sphere radius")->capture_default_str();
  b_grav->add_flag("--cross-check", bo.cross_check, "Add the auxiliary-series recomputation");
  add_common(b_grav);
  auto* b_uni = bounds_cmd->add_subcommand("univariate", "g(beta . x)");
  b_uni->add_option("--coeffs", bo.coeffs, "a0,a1,... (trailing ... repeats)")->required();
  b_uni->add_option("--beta", bo.beta, "||beta||")->required();
  b_uni->add_option("--radius", bo.radius, "Radius of convergence");
  b_uni->add_option("--eps", report_eps, "Epsilon for the sample estimate")->capture_default_str();
  add_common(b_uni);
  auto* b_mono = bounds_cmd->add_subcommand("monomial", "prod_i (beta_i . x)");
  b_mono->add_option("--betas", bo.betas, "||beta_1||,...,||beta_p||")->required();
  b_mono->add_option("--eps", report_eps)->capture_default_str();
  add_common(b_mono);
  auto* b_kw = bounds_cmd->add_subcommand("kernel-weighted", "sum_k b_k^-1/2 |a_k| beta^k");
  b_kw->add_option("--coeffs", bo.coeffs)->required();
  b_kw->add_option("--beta", bo.beta)->required();
  b_kw->add_option("--kernel", bo.kernel,
                   "inverse-square, plain-relu, modified-relu, gaussian, slow-decay");
  b_kw->add_option("--r", bo.r)->capture_default_str();
  b_kw->add_option("--s", bo.s)->capture_default_str();
  b_kw->add_option("--eps", report_eps)->capture_default_str();
  add_common(b_kw);
  auto* b_prod = bounds_cmd->add_subcommand("product", "g(x) h(x)");
  auto* b_chain = bounds_cmd->add_subcommand("chain", "g(h(x))");
  for (auto* c : {b_prod, b_chain}) {
    c->set_help_flag("--help", "Print this help message and exit");  // frees --h
    c->add_option("--g", bo.g, "Coefficients of g")->required();
    c->add_option("--h", bo.h, "Coefficients of h")->required();
    c->add_option("--eps", report_eps)->capture_default_str();
    add_common(c);
  }
  auto* b_tree = bounds_cmd->add_subcommand("tree", "Rule tree from a JSON file");
  b_tree->add_option("--file", bo.file, "JSON rule tree")->required()->check(CLI::ExistingFile);
  b_tree->add_option("--eps", report_eps)->capture_default_str();
  add_common(b_tree);
  for (auto* c : bounds_cmd->get_subcommands({})) {
    c->callback([&, c] {
      const std::string which = c->get_name();
      action = [&, which] {
        const BoundReport report = bounds(which, bo);
        const double eps = which == "gravity" ? bo.eps : report_eps;
        emit(out, to_document(report, eps) + "\n", bo.out);
      };
    });
  }

  CoeffOptions co;
  auto* coeffs_cmd = app.add_subcommand("kernel-coeffs", "Power-series coefficients b_k");
  coeffs_cmd->add_option("--kernel", co.kernel, "modified-relu, gaussian, slow-decay")
      ->capture_default_str();
  coeffs_cmd->add_option("--kmax", co.kmax, "Largest degree (<= 2000)")->capture_default_str();
  coeffs_cmd->add_option("--r", co.r, "Gaussian sphere radius")->capture_default_str();
  coeffs_cmd->add_option("--s", co.s, "Slow-decay exponent")->capture_default_str();
  coeffs_cmd->add_option("--out", co.out, "Also write the table here");
  coeffs_cmd->callback([&] { action = [&] { kernel_coeffs(co, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gravbound: usage error: " << one_line(e.what()) << "\n";
    return kExitUsage;
  }
  try {
    if (action) action();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "gravbound: usage error: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "gravbound: error: " << one_line(e.what()) << "\n";
    return kExitFailure;
  }
}

}  // namespace gravbound::cli
