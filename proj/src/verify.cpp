#include "qso/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "qso/analysis/fixed_points.hpp"
#include "qso/analysis/limit_sets.hpp"
#include "qso/analysis/lyapunov.hpp"
#include "qso/analysis/probes.hpp"
#include "qso/error.hpp"
#include "qso/families.hpp"
#include "qso/random.hpp"
#include "qso/scalar_maps.hpp"

namespace qso {

namespace {

// Calibrated on a 1e7-step run; see docs/zakharevich_calibration.md.
constexpr double kZakharevichDelta = 1e-3;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

class Recorder {
 public:
  explicit Recorder(std::vector<CheckResult>& out) : out_(out) {}
  void operator()(int criterion, std::string name, bool passed, std::string measured) {
    out_.push_back({criterion, std::move(name), passed, std::move(measured)});
  }

 private:
  std::vector<CheckResult>& out_;
};

double dist_to_center(const SimplexPoint& x) { return sup_distance(x, SimplexPoint::center(x.dim())); }

Operator op_of(Family f, int m, std::optional<Permutation> pi = std::nullopt, std::optional<double> p = std::nullopt) {
  return make_operator(FamilySpec{f, m, std::move(pi), p});
}

SimplexPoint alpha_fixed_point(int m, double alpha) {
  const double last = scalar_fixed_point(m, alpha);
  std::vector<double> c(static_cast<std::size_t>(m), (1.0 - last) / (m - 1));
  c.back() = last;
  return SimplexPoint::normalized(std::move(c));
}

// Permutations with more than one cycle length on {1..m-1}.
Permutation mixed_cycle_permutation(int m) {
  return m == 3 ? parse_cycles("(1 2)", 2) : parse_cycles("(1 2 3)", m - 1);
}

// ---- regular ----------------------------------------------------------------

void regular_suite(Recorder& rec, std::uint64_t seed) {
  for (int m : {3, 4, 5, 8}) {
    const Operator op = op_of(Family::REGULAR, m);
    Rng rng(derive_seed(seed, 100 + m));
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) worst = std::max(worst, dist_to_center(iterate_to(op.tensor, rng.interior_point(m), 200)));
    rec(1, fmt("REGULAR m=%d converges to c from 100 starts", m), worst < 1e-8, fmt("max |x^200 - c| = %.3e", worst));
  }

  for (int m : {5, 8}) {
    const PsiBoundReport r = psi_bound_check(m, 10000, derive_seed(seed, 200 + m));
    rec(2, fmt("psi <= (4/m)^m, m=%d, 1e4 samples", m), r.violations == 0 && r.center_gap < 1e-12,
        fmt("max psi = %.6e, bound = %.6e, violations = %d, |psi(c) - bound| = %.3e", r.max_psi, r.bound,
            r.violations, r.center_gap));
  }
  {
    const MaxNormReport r = max_norm_check(10000, derive_seed(seed, 210));
    rec(2, "max-norm strictly decreases, m=4, 1e4 samples", r.violations == 0,
        fmt("violations = %d, excluded = %d, min margin = %.3e", r.violations, r.excluded, r.min_margin));
  }

  {
    const Operator op = op_of(Family::REGULAR, 6);
    const LyapunovReport r = check_lyapunov(op, lyapunov_function(LyapunovId::CYCLIC_PRODUCT), 100, 100,
                                            derive_seed(seed, 300));
    rec(3, "CYCLIC_PRODUCT non-increasing on REGULAR m=6", r.violations == 0,
        fmt("violations = %lld of %lld, worst = %.3e", static_cast<long long>(r.violations),
            static_cast<long long>(r.comparisons), r.worst_violation));
  }

  for (int m : {4, 5, 8}) {
    const Operator op = op_of(Family::REGULAR, m);
    const FixedPointReport c = classify_fixed_point(op.tensor, SimplexPoint::center(m));
    const double largest = std::abs(c.tangent_eigenvalues.front());
    rec(8, fmt("REGULAR m=%d center is ATTRACTING with zero tangent spectrum", m),
        c.classification == Stability::ATTRACTING && largest < 1e-10,
        fmt("%s, max |lambda| = %.3e", std::string(to_string(c.classification)).c_str(), largest));
    int non_hyperbolic = 0;
    double closest = INFINITY;
    for (int k = 1; k <= m; ++k) {
      const FixedPointReport v = classify_fixed_point(op.tensor, SimplexPoint::vertex(m, k));
      if (v.classification == Stability::NON_HYPERBOLIC) ++non_hyperbolic;
      for (const auto& z : v.tangent_eigenvalues) closest = std::min(closest, std::abs(std::abs(z) - 1.0));
    }
    rec(8, fmt("REGULAR m=%d vertices are NON_HYPERBOLIC", m), non_hyperbolic == m,
        fmt("%d of %d non-hyperbolic, min ||lambda| - 1| = %.3e", non_hyperbolic, m, closest));
  }
}

// ---- quasi-strict -------------------------------------------------------------

void quasi_strict_suite(Recorder& rec, std::uint64_t seed) {
  const Permutation pi = parse_cycles("(1 2)(3 4 5)", 5);
  const Operator op = op_of(Family::QUASI_STRICT, 6, pi);

  for (LyapunovId id : {LyapunovId::CYCLE_PRODUCT, LyapunovId::CYCLE_SUM}) {
    for (int l = 1; l <= static_cast<int>(pi.cycles().size()); ++l) {
      const LyapunovFn fn = cycle_function(id, pi, l);
      const LyapunovReport r = check_lyapunov(op, fn, 100, 100, derive_seed(seed, 400 + 10 * static_cast<int>(id) + l));
      rec(3, fn.name() + " non-decreasing on QUASI_STRICT m=6 from iterate 1", r.violations == 0,
          fmt("violations = %lld of %lld, worst = %.3e", static_cast<long long>(r.violations),
              static_cast<long long>(r.comparisons), r.worst_violation));
    }
  }

  {
    Rng rng(derive_seed(seed, 500));
    double worst_last = 0.0;
    int period_ok = 0, clusters_ok = 0;
    double worst_map = 0.0;
    for (int s = 0; s < 20; ++s) {
      const SimplexPoint x0 = rng.interior_point(6);
      const Trajectory traj = iterate(op.tensor, x0, 1000);
      for (const auto& p : traj.points) {
        if (p.step >= 200) worst_last = std::max(worst_last, std::abs(p.x.last() - 0.5));
      }
      if (detect_period(traj, 50) == 6) ++period_ok;
      const OmegaSet w = omega_estimate(op.tensor, x0, 1000, 120);
      bool ok = w.cluster_points.size() == 6;
      for (const auto& p : w.cluster_points) {
        const SimplexPoint image = apply(op.tensor, p);
        std::vector<double> permuted(6);
        for (int k = 1; k <= 5; ++k) permuted[static_cast<std::size_t>(k - 1)] = p.at(pi(k));
        permuted[5] = p.last();
        double nearest = INFINITY;
        for (const auto& q : w.cluster_points) nearest = std::min(nearest, sup_distance(image, q));
        const double map_err = std::max(nearest, sup_distance(image.coords(), permuted));
        worst_map = std::max(worst_map, map_err);
        ok = ok && map_err < 1e-8 && std::abs(p.last() - 0.5) < 1e-8;
      }
      if (ok) ++clusters_ok;
    }
    rec(4, "QUASI_STRICT m=6 last coordinate within 1e-10 of 1/2 for n >= 200", worst_last < 1e-10,
        fmt("max |x_m - 1/2| = %.3e over 20 starts", worst_last));
    rec(4, "QUASI_STRICT m=6 detect_period = 6", period_ok == 20, fmt("%d of 20 starts", period_ok));
    rec(4, "QUASI_STRICT m=6 omega set is a pi-permuted 6-cycle", clusters_ok == 20,
        fmt("%d of 20 starts, worst map error = %.3e", clusters_ok, worst_map));
  }

  {
    const Permutation p3 = parse_cycles("(1 2 3)", 3);
    const Operator v = op_of(Family::QUASI_STRICT, 4, p3);
    Rng rng(derive_seed(seed, 600));
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const SimplexPoint y = rng.interior_point(3);
      const SimplexPoint x = SimplexPoint::normalized({0.5 * y[0], 0.5 * y[1], 0.5 * y[2], 0.5});
      worst = std::max(worst, sup_distance(iterate_to(v.tensor, x, 3), x));
    }
    rec(5, "QUASI_STRICT m=4 points with x_m = 1/2 have period 3", worst < 1e-12,
        fmt("max |V^3(x) - x| = %.3e over 50 points", worst));
    const PeriodicSearchReport r = periodic_absence_search(4, p3, 4, 40, derive_seed(seed, 610));
    rec(5, "QUASI_STRICT m=4 has no 4-periodic points beyond Fix and Per_3", r.counterexamples.empty(),
        fmt("%zu fixed, %zu period-3, %zu counterexamples, %d of %d starts unconverged", r.fixed_points.size(),
            r.period_s_points.size(), r.counterexamples.size(), r.not_converged, r.starts));
  }
}

// ---- alpha combination -------------------------------------------------------

void alpha_suite(Recorder& rec, std::uint64_t seed) {
  for (double alpha : {0.3, 0.7}) {
    const Operator op = op_of(Family::ALPHA_COMBINATION, 4, parse_cycles("(1 2 3)", 3), alpha);
    const LyapunovReport r = check_lyapunov(op, lyapunov_function(LyapunovId::LAST_COORD), 100, 100,
                                            derive_seed(seed, 700 + static_cast<int>(alpha * 10)));
    rec(3, fmt("LAST_COORD non-increasing on ALPHA_COMBINATION m=4 alpha=%.1f", alpha), r.violations == 0,
        fmt("violations = %lld of %lld, worst = %.3e", static_cast<long long>(r.violations),
            static_cast<long long>(r.comparisons), r.worst_violation));
  }

  for (int m : {3, 5}) {
    const Permutation pi = mixed_cycle_permutation(m);
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const Operator op = op_of(Family::ALPHA_COMBINATION, m, pi, alpha);
      const SimplexPoint star = alpha_fixed_point(m, alpha);
      Rng rng(derive_seed(seed, 800 + 10 * m + static_cast<int>(alpha * 10)));
      double worst = 0.0, worst_factor = 0.0, bound = 0.0;
      bool contraction_ok = true;
      for (int s = 0; s < 50; ++s) {
        const SimplexPoint x0 = rng.interior_point(m);
        worst = std::max(worst, sup_distance(iterate_to(op.tensor, x0, 500), star));
        const ContractionReport c = contraction_report(m, pi, alpha, x0);
        worst_factor = std::max(worst_factor, c.worst_factor);
        bound = c.bound;
        contraction_ok = contraction_ok && c.passed;
      }
      const std::string label = fmt("m=%d pi=%s alpha=%.1f", m, pi.to_string().c_str(), alpha);
      rec(7, "ALPHA_COMBINATION " + label + " converges to x*", worst < 1e-8,
          fmt("max |x^500 - x*| = %.3e", worst));
      rec(7, "ALPHA_COMBINATION " + label + " spread contraction", contraction_ok,
          fmt("worst factor = %.6f, bound = %.6f", worst_factor, bound));
      const FixedPointReport fp = classify_fixed_point(op.tensor, star);
      rec(8, "ALPHA_COMBINATION " + label + " interior fixed point ATTRACTING", fp.classification == Stability::ATTRACTING,
          fmt("%s, max |lambda| = %.6f", std::string(to_string(fp.classification)).c_str(),
              std::abs(fp.tangent_eigenvalues.front())));
    }
  }
}

// ---- S^2 families ------------------------------------------------------------

void s2_suite(Recorder& rec, std::uint64_t seed) {
  const SimplexPoint c = SimplexPoint::center(3);
  {
    const Operator op = op_of(Family::VALLANDER_THETA, 3, std::nullopt, 0.5);
    Rng rng(derive_seed(seed, 900));
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) worst = std::max(worst, sup_distance(iterate_to(op.tensor, rng.interior_point(3), 2000), c));
    rec(9, "VALLANDER_THETA 0.5 converges to c", worst < 1e-6, fmt("max |x^2000 - c| = %.3e over 50 starts", worst));
  }
  {
    const Operator op = op_of(Family::VALLANDER_THETA, 3, std::nullopt, 0.9);
    Rng rng(derive_seed(seed, 910));
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      SimplexPoint x0 = rng.interior_point(3);
      if (x0[0] < x0[2]) x0 = SimplexPoint::normalized({x0[2], x0[1], x0[0]});
      if (x0[0] == x0[2]) continue;
      worst = std::max(worst, sup_distance(iterate_to(op.tensor, x0, 2000), SimplexPoint::vertex(3, 1)));
    }
    rec(9, "VALLANDER_THETA 0.9 with x1 > x3 converges to e1", worst < 1e-6,
        fmt("max |x^2000 - e1| = %.3e over 50 starts", worst));
  }
  {
    const Operator op = op_of(Family::VALLANDER_THETA, 3, std::nullopt, 0.75);
    const double d = 0.2;
    const double root = std::sqrt(1.0 + 3.0 * d * d);
    const SimplexPoint expected = SimplexPoint::normalized({(1 + 3 * d + root) / 6, (2 - root) / 3, (1 - 3 * d + root) / 6});
    const SimplexPoint limit = iterate_to(op.tensor, SimplexPoint::validate(std::vector{0.4, 0.4, 0.2}), 100000);
    const double err = sup_distance(limit, expected);
    rec(9, "VALLANDER_THETA 0.75 limit on x1 - x3 = 0.2 matches closed form", err < 1e-6, fmt("error = %.3e", err));
  }
  {
    const Operator op = op_of(Family::GANIKHODJAEV_LAMBDA, 3, std::nullopt, 0.8);
    Rng rng(derive_seed(seed, 920));
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) worst = std::max(worst, sup_distance(iterate_to(op.tensor, rng.interior_point(3), 2000), c));
    rec(9, "GANIKHODJAEV_LAMBDA 0.8 converges to c", worst < 1e-6, fmt("max |x^2000 - c| = %.3e over 50 starts", worst));
  }
  {
    const Operator op = op_of(Family::GANIKHODJAEV_LAMBDA, 3, std::nullopt, 0.1);
    Rng rng(derive_seed(seed, 930));
    const OmegaSet w = omega_estimate(op.tensor, rng.interior_point(3), 1000, 1000, kClusterTolerance, 50);
    rec(9, "GANIKHODJAEV_LAMBDA 0.1 omega set is infinite", w.cluster_points.size() > 10 && !w.detected_period,
        fmt("%zu clusters, period %s", w.cluster_points.size(),
            w.detected_period ? std::to_string(*w.detected_period).c_str() : "none"));
  }
  {
    const Operator op = op_of(Family::KHUKR, 3);
    const OmegaSet w = omega_estimate(op.tensor, SimplexPoint::validate(std::vector{0.4, 0.36, 0.24}), 1000, 100);
    const SimplexPoint a = SimplexPoint::validate(std::vector{0.5, 0.2, 0.3});
    const SimplexPoint b = SimplexPoint::validate(std::vector{0.5, 0.3, 0.2});
    double err = INFINITY;
    if (w.cluster_points.size() == 2) err = std::max(sup_distance(w.cluster_points[0], a), sup_distance(w.cluster_points[1], b));
    rec(9, "KHUKR from (0.4, 0.36, 0.24) reaches the 2-cycle", err < 1e-6 && w.detected_period == 2,
        fmt("%zu clusters, error = %.3e", w.cluster_points.size(), err));
  }
  {
    const Operator op = op_of(Family::VALLANDER_SPIRAL, 3, std::nullopt, 0.5);
    Rng rng(derive_seed(seed, 940));
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const SimplexPoint x = rng.interior_point(3);
      worst = std::max(worst, sup_distance(apply(op.tensor, x), x));
    }
    rec(9, "VALLANDER_SPIRAL 0.5 is the identity", worst < 1e-12, fmt("max |V(x) - x| = %.3e", worst));
  }
}

// ---- scalar maps -------------------------------------------------------------

void scalar_suite(Recorder& rec, std::uint64_t seed) {
  {
    const ScalarMapSpec f = ScalarMapSpec::f();
    Rng rng(derive_seed(seed, 1000));
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) worst = std::max(worst, std::abs(iterate_scalar(f, rng.uniform(), 100) - 0.5));
    rec(6, "f^100 converges to 1/2", worst < 1e-12, fmt("max |f^100(x) - 1/2| = %.3e over 1e3 starts", worst));
  }
  {
    const auto roots = low_period_scan(ScalarMapSpec::f(), 3, 100000);
    bool ok = !roots.empty();
    std::string listed;
    for (double r : roots) {
      ok = ok && (std::abs(r - 0.5) < 1e-6 || std::abs(r - 1.0) < 1e-6);
      listed += fmt("%s%.12f", listed.empty() ? "" : ", ", r);
    }
    rec(6, "f^3 has no roots besides 1/2 and 1", ok, "roots = {" + listed + "}");
  }
  for (int m : {3, 5, 8}) {
    for (double alpha : {0.1, 0.5, 0.9}) {
      const ScalarMapSpec fa = ScalarMapSpec::f_alpha(m, alpha);
      double worst = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double h = conjugacy_h(m, alpha, x);
        worst = std::max(worst, std::abs(conjugacy_h(m, alpha, eval(fa, x)) - logistic2(h)));
      }
      rec(6, fmt("conjugacy h(f_alpha) = g(h), m=%d alpha=%.1f", m, alpha), worst < 1e-12,
          fmt("max defect = %.3e on 1001 grid points", worst));
    }
  }
}

// ---- core properties ---------------------------------------------------------

CoefficientTensor random_tensor(int m, Rng& rng) {
  std::vector<TensorEntry> entries;
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const SimplexPoint row = rng.interior_point(m);
      for (int k = 1; k <= m; ++k) entries.push_back({i, j, k, row.at(k)});
    }
  }
  return build_tensor(m, entries);
}

void core_suite(Recorder& rec, std::uint64_t seed) {
  {
    Rng rng(derive_seed(seed, 1100));
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int m = 3 + static_cast<int>(rng.below(4));
      const CoefficientTensor t = random_tensor(m, rng);
      const SimplexPoint x = rng.interior_point(m);
      const Eigen::MatrixXd jac = jacobian(t, x);
      const double h = 1e-5;
      std::vector<double> plus(x.coords().begin(), x.coords().end()), minus = plus;
      std::vector<double> fp(static_cast<std::size_t>(m)), fm(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) {
        plus[static_cast<std::size_t>(j)] += h;
        minus[static_cast<std::size_t>(j)] -= h;
        t.evaluate(plus, fp);
        t.evaluate(minus, fm);
        for (int k = 0; k < m; ++k) {
          const double fd = (fp[static_cast<std::size_t>(k)] - fm[static_cast<std::size_t>(k)]) / (2 * h);
          worst = std::max(worst, std::abs(fd - jac(k, j)));
        }
        plus[static_cast<std::size_t>(j)] = minus[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
      }
    }
    rec(8, "Jacobian matches central differences on 20 random tensors", worst < 1e-6,
        fmt("max entry error = %.3e", worst));
  }
  {
    const std::vector<std::int64_t> checkpoints{10000, 100000, 1000000};
    const Operator z = op_of(Family::ZAKHAREVICH, 3);
    const ErgodicityReport r = ergodicity_probe(z.tensor, SimplexPoint::validate(std::vector{0.3, 0.3, 0.4}), checkpoints);
    rec(10, "ZAKHAREVICH Cesaro means fluctuate above delta", r.fluctuation > kZakharevichDelta,
        fmt("fluctuation = %.6e, delta = %.1e, min coordinate at 1e6 = %.3e", r.fluctuation, kZakharevichDelta,
            r.min_coordinate.back()));
    const Operator reg = op_of(Family::REGULAR, 5);
    Rng rng(derive_seed(seed, 1200));
    const ErgodicityReport q = ergodicity_probe(reg.tensor, rng.interior_point(5), checkpoints);
    rec(10, "REGULAR m=5 Cesaro means settle", q.fluctuation < 1e-4, fmt("fluctuation = %.3e", q.fluctuation));
  }
}

}  // namespace

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::REGULAR, Suite::QUASI_STRICT, Suite::ALPHA, Suite::S2_THEOREMS, Suite::SCALAR,
                  Suite::CORE_PROPERTIES, Suite::ALL}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::REGULAR: return "regular";
    case Suite::QUASI_STRICT: return "quasi_strict";
    case Suite::ALPHA: return "alpha";
    case Suite::S2_THEOREMS: return "s2_theorems";
    case Suite::SCALAR: return "scalar";
    case Suite::CORE_PROPERTIES: return "core_properties";
    case Suite::ALL: return "all";
  }
  return "unknown";
}

std::vector<CheckResult> run_suite(Suite suite, std::uint64_t seed) {
  std::vector<CheckResult> results;
  Recorder rec(results);
  const bool all = suite == Suite::ALL;
  if (all || suite == Suite::REGULAR) regular_suite(rec, seed);
  if (all || suite == Suite::QUASI_STRICT) quasi_strict_suite(rec, seed);
  if (all || suite == Suite::ALPHA) alpha_suite(rec, seed);
  if (all || suite == Suite::S2_THEOREMS) s2_suite(rec, seed);
  if (all || suite == Suite::SCALAR) scalar_suite(rec, seed);
  if (all || suite == Suite::CORE_PROPERTIES) core_suite(rec, seed);
  return results;
}

std::string format_results(const std::vector<CheckResult>& results) {
  std::string out;
  int passed = 0;
  for (const auto& r : results) {
    out += fmt("%s [C%d] ", r.passed ? "PASS" : "FAIL", r.criterion) + r.name + ": " + r.measured + "\n";
    passed += r.passed ? 1 : 0;
  }
  out += fmt("%d of %zu checks passed\n", passed, results.size());
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace qso
