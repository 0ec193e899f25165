// qso: command-line front end for the quadratic stochastic operator library.
//
// Exit codes: 0 success, 1 analysis or verification failure, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qso/analysis/fixed_points.hpp"
#include "qso/analysis/limit_sets.hpp"
#include "qso/analysis/lyapunov.hpp"
#include "qso/analysis/probes.hpp"
#include "qso/error.hpp"
#include "qso/families.hpp"
#include "qso/random.hpp"
#include "qso/report.hpp"
#include "qso/scalar_maps.hpp"
#include "qso/tensor.hpp"
#include "qso/verify.hpp"

namespace {

using namespace qso;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAFixedPoint:
    case ErrorCode::InsufficientTail:
    case ErrorCode::NeverEntersRegion:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

struct OperatorOptions {
  std::string family = "REGULAR";
  int m = 0;
  std::string perm;
  std::optional<double> param;
  std::string tensor_file;

  void add_to(CLI::App* app) {
    app->add_option("--family", family, "operator family (see `families`)");
    app->add_option("--m", m, "number of types");
    app->add_option("--perm", perm, "permutation of {1..m-1} in cycle notation, e.g. \"(1 2)(3 4 5)\"");
    auto* p = app->add_option("--param", param, "family parameter");
    for (const char* alias : {"--alpha", "--theta", "--lambda", "--beta"}) {
      app->add_option(alias, param, "alias of --param")->excludes(p);
    }
    app->add_option("--tensor-file", tensor_file, "coefficient file in the text exchange format");
  }

  Operator build() const {
    if (!tensor_file.empty()) return custom_operator(read_tensor_file(tensor_file));
    FamilySpec spec;
    spec.family = parse_family(family);
    spec.m = m > 0 ? m : 3;
    spec.parameter = param;
    if (!perm.empty()) spec.permutation = parse_cycles(perm, spec.m - 1);
    return make_operator(spec);
  }

  Json parameters(const Operator& op) const {
    Json j{{"family", std::string(to_string(op.spec.family))}, {"m", op.dim()}};
    if (op.spec.permutation) j["permutation"] = op.spec.permutation->to_string();
    if (op.spec.parameter) j["parameter"] = *op.spec.parameter;
    if (!tensor_file.empty()) j["tensor_file"] = tensor_file;
    return j;
  }
};

struct StartOptions {
  std::string x0;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App* app, bool with_seed = true) {
    app->add_option("--x0", x0, "initial point, comma-separated");
    if (with_seed) app->add_option("--seed", seed, "seed for a random interior start");
  }

  SimplexPoint resolve(int m) const {
    if (!x0.empty()) {
      SimplexPoint x = parse_point(x0);
      if (x.dim() != m) throw Error(ErrorCode::DimensionMismatch, "--x0 has the wrong number of coordinates");
      return x;
    }
    if (seed) return Rng(*seed).interior_point(m);
    throw UsageError("either --x0 or --seed is required");
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(const std::string& path, const Json& report) {
  Output out(path);
  out.stream() << dump_json(report) << '\n';
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::int64_t> parse_checkpoints(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || v < 1 || v != static_cast<double>(static_cast<std::int64_t>(v))) throw 0;
      out.push_back(static_cast<std::int64_t>(v));
    } catch (...) {
      throw UsageError("bad checkpoint '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic stochastic operators on the simplex"};
  app.require_subcommand(1);

  OperatorOptions op_opts;
  StartOptions start;
  std::string out_path;
  std::uint64_t seed = 0;

  // families
  bool families_json = false;
  auto* families = app.add_subcommand("families", "list the operator registry");
  families->add_flag("--json", families_json, "machine-readable listing");

  // trajectory
  std::int64_t steps = 100, stride = 1;
  auto* trajectory = app.add_subcommand("trajectory", "iterate an operator and write CSV");
  op_opts.add_to(trajectory);
  start.add_to(trajectory);
  trajectory->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);
  trajectory->add_option("--stride", stride, "record every stride-th step")->check(CLI::PositiveNumber);
  trajectory->add_option("--out", out_path, "output file (default stdout)");

  // fixed-points
  FixedPointSearchOptions fp_opts;
  fp_opts.random_starts = 0;
  std::optional<std::uint64_t> fp_seed;
  auto* fixed = app.add_subcommand("fixed-points", "multistart Newton search for fixed points");
  op_opts.add_to(fixed);
  fixed->add_option("--random-starts", fp_opts.random_starts, "seeded interior starts (needs --seed)")
      ->check(CLI::NonNegativeNumber);
  fixed->add_option("--seed", fp_seed, "seed for random starts");
  fixed->add_option("--tol", fp_opts.tol, "Newton tolerance")->check(CLI::PositiveNumber);
  fixed->add_option("--band", fp_opts.band, "non-hyperbolicity band")->check(CLI::PositiveNumber);
  fixed->add_option("--out", out_path, "output file (default stdout)");

  // classify
  double band = kHyperbolicBand;
  auto* classify = app.add_subcommand("classify", "classify a fixed point by its tangent spectrum");
  op_opts.add_to(classify);
  start.add_to(classify, false);
  classify->add_option("--band", band, "non-hyperbolicity band")->check(CLI::PositiveNumber);
  classify->add_option("--out", out_path, "output file (default stdout)");

  // lyapunov
  std::string fn_name;
  int cycle = 0, samples = 100, horizon = 100;
  double slack = kLyapunovSlack;
  auto* lyapunov = app.add_subcommand("lyapunov", "check a Lyapunov function along seeded trajectories");
  op_opts.add_to(lyapunov);
  lyapunov->add_option("--function", fn_name, "CYCLIC_PRODUCT, CYCLE_PRODUCT, CYCLE_SUM, LAST_COORD, ...")->required();
  lyapunov->add_option("--cycle", cycle, "cycle index for CYCLE_PRODUCT / CYCLE_SUM");
  lyapunov->add_option("--samples", samples)->check(CLI::PositiveNumber);
  lyapunov->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
  lyapunov->add_option("--seed", seed)->required();
  lyapunov->add_option("--slack", slack)->check(CLI::NonNegativeNumber);
  lyapunov->add_option("--out", out_path, "output file (default stdout)");

  // omega
  std::int64_t burn_in = 1000, window = 200;
  double cluster_tol = kClusterTolerance;
  int s_max = 50;
  auto* omega = app.add_subcommand("omega", "estimate the omega-limit set of a trajectory");
  op_opts.add_to(omega);
  start.add_to(omega);
  omega->add_option("--burn-in", burn_in)->check(CLI::PositiveNumber);
  omega->add_option("--window", window)->check(CLI::PositiveNumber);
  omega->add_option("--cluster-tol", cluster_tol)->check(CLI::PositiveNumber);
  omega->add_option("--s-max", s_max, "largest period searched")->check(CLI::PositiveNumber);
  omega->add_option("--out", out_path, "output file (default stdout)");

  // ergodic
  std::string checkpoints_text = "10000,100000,1000000";
  auto* ergodic = app.add_subcommand("ergodic", "Cesaro-mean fluctuation between checkpoints");
  op_opts.add_to(ergodic);
  start.add_to(ergodic);
  ergodic->add_option("--checkpoints", checkpoints_text, "increasing step counts, comma-separated");
  ergodic->add_option("--out", out_path, "output file (default stdout)");

  // scalar
  std::string map_name = "F";
  int scalar_m = 3, scan_period = 0, grid = 100000;
  double scalar_alpha = 0.0;
  std::optional<double> scalar_x0;
  std::int64_t scalar_steps = 100;
  auto* scalar = app.add_subcommand("scalar", "iterate f or f_alpha, or scan for low periods");
  scalar->add_option("--map", map_name, "F or F_ALPHA")->check(CLI::IsMember({"F", "F_ALPHA"}));
  scalar->add_option("--m", scalar_m);
  scalar->add_option("--alpha", scalar_alpha);
  scalar->add_option("--x0", scalar_x0, "starting value in [0, 1]");
  scalar->add_option("--steps", scalar_steps)->check(CLI::NonNegativeNumber);
  scalar->add_option("--scan-period", scan_period, "find all roots of f^n(x) = x")->check(CLI::PositiveNumber);
  scalar->add_option("--grid", grid)->check(CLI::Range(1000, 100000000));
  scalar->add_option("--out", out_path, "output file (default stdout)");

  // verify
  std::string suite_name;
  auto* verify = app.add_subcommand("verify", "run a theorem-verification suite");
  verify->add_option("--suite", suite_name, "regular, quasi_strict, alpha, s2_theorems, scalar, core_properties, all")
      ->required();
  verify->add_option("--seed", seed)->required();
  verify->add_option("--out", out_path, "summary file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (families->parsed()) {
      if (families_json) {
        Json list = Json::array();
        for (const auto& f : family_registry()) {
          list.push_back(Json{{"name", f.name},
                              {"m", f.dimension},
                              {"parameter", f.parameter_name},
                              {"permutation", f.needs_permutation},
                              {"formula", f.formula}});
        }
        std::cout << dump_json(list) << '\n';
      } else {
        for (const auto& f : family_registry()) {
          const std::string dim = (f.dimension.front() == '>' ? "m" : "m=") + f.dimension;
          std::printf("%-20s %-5s %-8s %-5s %s\n", f.name.c_str(), dim.c_str(),
                      f.parameter_name.empty() ? "-" : f.parameter_name.c_str(), f.needs_permutation ? "perm" : "-",
                      f.formula.c_str());
        }
      }
      return 0;
    }

    if (trajectory->parsed()) {
      const Operator op = op_opts.build();
      const Trajectory traj = iterate(op.tensor, start.resolve(op.dim()), steps, stride, op.label());
      Output out(out_path);
      std::ostream& os = out.stream();
      os << 'n';
      for (int k = 1; k <= op.dim(); ++k) os << ",x" << k;
      os << '\n';
      for (const auto& p : traj.points) {
        os << p.step;
        for (double v : p.x.coords()) os << ',' << g17(v);
        os << '\n';
      }
      return 0;
    }

    if (fixed->parsed()) {
      if (fp_opts.random_starts > 0 && !fp_seed) throw UsageError("--random-starts needs --seed");
      fp_opts.seed = fp_seed.value_or(0);
      const Operator op = op_opts.build();
      const FixedPointSearch search = find_fixed_points(op.tensor, fp_opts);
      Json points = Json::array();
      for (const auto& r : search.points) points.push_back(to_json(r));
      Json results{{"fixed_points", points},
                   {"starts_tried", search.starts_tried},
                   {"not_converged", search.not_converged}};
      write_json(out_path, make_report(op.label(), op_opts.parameters(op), fp_opts.seed,
                                       Json{{"newton", fp_opts.tol},
                                            {"dedup_radius", fp_opts.dedup_radius},
                                            {"band", fp_opts.band},
                                            {"random_starts", fp_opts.random_starts}},
                                       results));
      return 0;
    }

    if (classify->parsed()) {
      const Operator op = op_opts.build();
      if (start.x0.empty()) throw UsageError("--x0 is required");
      const FixedPointReport r = classify_fixed_point(op.tensor, start.resolve(op.dim()), band);
      write_json(out_path, make_report(op.label(), op_opts.parameters(op), 0,
                                       Json{{"band", band}, {"acceptance", kFixedPointAcceptance}}, to_json(r)));
      return 0;
    }

    if (lyapunov->parsed()) {
      const Operator op = op_opts.build();
      const LyapunovId id = parse_lyapunov_id(fn_name);
      LyapunovFn fn;
      if (id == LyapunovId::CYCLE_PRODUCT || id == LyapunovId::CYCLE_SUM) {
        if (!op.spec.permutation) throw UsageError(fn_name + " needs a permutation operator");
        if (cycle < 1) throw UsageError(fn_name + " needs --cycle");
        fn = cycle_function(id, *op.spec.permutation, cycle);
      } else {
        fn = lyapunov_function(id);
      }
      const LyapunovReport r = check_lyapunov(op, fn, samples, horizon, seed, slack);
      write_json(out_path, make_report(op.label(), op_opts.parameters(op), seed, Json{{"slack", slack}}, to_json(r)));
      return r.violations == 0 ? 0 : kExitFailure;
    }

    if (omega->parsed()) {
      const Operator op = op_opts.build();
      const OmegaSet w = omega_estimate(op.tensor, start.resolve(op.dim()), burn_in, window, cluster_tol, s_max);
      write_json(out_path, make_report(op.label(), op_opts.parameters(op), start.seed.value_or(0),
                                       Json{{"cluster_tol", cluster_tol}, {"period_tol", kPeriodTolerance}},
                                       to_json(w)));
      return 0;
    }

    if (ergodic->parsed()) {
      const Operator op = op_opts.build();
      const auto checkpoints = parse_checkpoints(checkpoints_text);
      const ErgodicityReport r = ergodicity_probe(op.tensor, start.resolve(op.dim()), checkpoints);
      write_json(out_path, make_report(op.label(), op_opts.parameters(op), start.seed.value_or(0), Json::object(),
                                       to_json(r)));
      return 0;
    }

    if (scalar->parsed()) {
      const ScalarMapSpec spec = map_name == "F" ? ScalarMapSpec::f() : ScalarMapSpec::f_alpha(scalar_m, scalar_alpha);
      Json params{{"map", map_name}};
      if (spec.kind == ScalarMapKind::F_ALPHA) {
        params["m"] = scalar_m;
        params["alpha"] = scalar_alpha;
      }
      Json results = Json::object();
      if (scan_period > 0) {
        results["scan_period"] = scan_period;
        results["grid"] = grid;
        results["roots"] = low_period_scan(spec, scan_period, grid);
      }
      if (scalar_x0) {
        results["x0"] = *scalar_x0;
        results["steps"] = scalar_steps;
        results["value"] = iterate_scalar(spec, *scalar_x0, scalar_steps);
      }
      if (scan_period == 0 && !scalar_x0) throw UsageError("scalar needs --x0 or --scan-period");
      if (spec.kind == ScalarMapKind::F_ALPHA) results["fixed_point"] = scalar_fixed_point(scalar_m, scalar_alpha);
      write_json(out_path, make_report(map_name, params, 0, Json{{"root_residual", 1e-10}, {"merge_radius", 1e-8}},
                                       results));
      return 0;
    }

    if (verify->parsed()) {
      const Suite suite = parse_suite(suite_name);
      const auto results = run_suite(suite, seed);
      Output out(out_path);
      out.stream() << format_results(results);
      return all_passed(results) ? 0 : kExitFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
