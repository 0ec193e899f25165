#include "qso/analysis/invariant_sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qso/error.hpp"
#include "qso/random.hpp"
#include "qso/tensor.hpp"

namespace qso {

namespace {

const std::vector<int>& cycle_at(const Operator& op, int index) {
  const auto& cycles = op.spec.permutation->cycles();
  if (index < 1 || index > static_cast<int>(cycles.size())) {
    throw Error(ErrorCode::InapplicableSet, "cycle index " + std::to_string(index) + " out of range");
  }
  return cycles[static_cast<std::size_t>(index - 1)];
}

double cycle_product(const std::vector<int>& cycle, std::span<const double> x) {
  double p = 1.0;
  for (int k : cycle) p *= x[static_cast<std::size_t>(k - 1)];
  return p;
}

void require_applicable(const InvariantSetSpec& set, const Operator& op) {
  const Family f = op.spec.family;
  bool ok = false;
  switch (set.id) {
    case InvariantSetId::M0:
      ok = f == Family::QUASI_STRICT;
      break;
    case InvariantSetId::M_OMEGA:
      ok = f == Family::QUASI_STRICT && op.spec.permutation && set.i != set.j && set.omega > 0.0 &&
           std::isfinite(set.omega);
      if (ok) {
        cycle_at(op, set.i);
        cycle_at(op, set.j);
      }
      break;
    case InvariantSetId::VALLANDER_DIAG:
      ok = f == Family::VALLANDER_THETA || f == Family::V0 || f == Family::V1;
      break;
    case InvariantSetId::KHUKR_M_TAU:
      ok = f == Family::KHUKR && set.tau > 0.0 && std::isfinite(set.tau);
      break;
  }
  if (!ok) throw Error(ErrorCode::InapplicableSet, set.name() + " does not apply to " + op.label());
}

SimplexPoint sample_member(const InvariantSetSpec& set, const Operator& op, Rng& rng) {
  const int m = op.dim();
  switch (set.id) {
    case InvariantSetId::M0: {
      const SimplexPoint y = rng.interior_point(m);
      std::vector<double> c(y.coords().begin(), y.coords().end());
      c[rng.below(static_cast<std::uint64_t>(m - 1))] = 0.0;
      return SimplexPoint::normalized(std::move(c));
    }
    case InvariantSetId::M_OMEGA: {
      const auto& ti = cycle_at(op, set.i);
      const auto& tj = cycle_at(op, set.j);
      const SimplexPoint y = rng.interior_point(m);
      std::vector<double> c(y.coords().begin(), y.coords().end());
      // Rescale the tau_i block so the ratio hits omega; shrink everything
      // if that leaves no room for x_m.
      for (;;) {
        const double t = std::pow(set.omega * cycle_product(tj, c) / cycle_product(ti, c), 1.0 / ti.size());
        std::vector<double> trial = c;
        for (int k : ti) trial[static_cast<std::size_t>(k - 1)] *= t;
        double head = 0.0;
        for (int k = 0; k < m - 1; ++k) head += trial[static_cast<std::size_t>(k)];
        if (head < 1.0) {
          trial.back() = 1.0 - head;
          return SimplexPoint::normalized(std::move(trial));
        }
        for (int k = 0; k < m - 1; ++k) c[static_cast<std::size_t>(k)] *= 0.5;
      }
    }
    case InvariantSetId::VALLANDER_DIAG: {
      const double a = 0.5 * rng.uniform();
      return SimplexPoint::normalized({a, 1.0 - 2.0 * a, a});
    }
    case InvariantSetId::KHUKR_M_TAU: {
      const double x1 = rng.uniform();
      const double x3 = (1.0 - x1) / (1.0 + set.tau);
      return SimplexPoint::normalized({x1, set.tau * x3, x3});
    }
  }
  throw Error(ErrorCode::InapplicableSet, "unknown set");
}

}  // namespace

std::string_view to_string(InvariantSetId id) {
  switch (id) {
    case InvariantSetId::M0: return "M0";
    case InvariantSetId::M_OMEGA: return "M_OMEGA";
    case InvariantSetId::VALLANDER_DIAG: return "VALLANDER_DIAG";
    case InvariantSetId::KHUKR_M_TAU: return "KHUKR_M_TAU";
  }
  return "UNKNOWN";
}

InvariantSetId parse_invariant_set(std::string_view name) {
  for (auto id : {InvariantSetId::M0, InvariantSetId::M_OMEGA, InvariantSetId::VALLANDER_DIAG,
                  InvariantSetId::KHUKR_M_TAU}) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown invariant set '" + std::string(name) + "'");
}

std::string InvariantSetSpec::name() const {
  char buf[96];
  switch (id) {
    case InvariantSetId::M_OMEGA:
      std::snprintf(buf, sizeof buf, "M_OMEGA(%d, %d, %.17g)", i, j, omega);
      return buf;
    case InvariantSetId::KHUKR_M_TAU:
      std::snprintf(buf, sizeof buf, "KHUKR_M_TAU(%.17g)", tau);
      return buf;
    default:
      return std::string(to_string(id));
  }
}

double membership_defect(const InvariantSetSpec& set, const Operator& op, const SimplexPoint& x) {
  switch (set.id) {
    case InvariantSetId::M0: {
      double p = 1.0;
      for (int k = 0; k < x.dim() - 1; ++k) p *= x[static_cast<std::size_t>(k)];
      return p;
    }
    case InvariantSetId::M_OMEGA: {
      const double r = cycle_product(cycle_at(op, set.i), x.coords()) / cycle_product(cycle_at(op, set.j), x.coords());
      return std::min(std::abs(r / set.omega - 1.0), std::abs(r * set.omega - 1.0));
    }
    case InvariantSetId::VALLANDER_DIAG:
      return std::abs(x[0] - x[2]);
    case InvariantSetId::KHUKR_M_TAU:
      return std::min(std::abs(x[1] - set.tau * x[2]), std::abs(x[1] - x[2] / set.tau));
  }
  return 0.0;
}

InvariantSetReport check_invariant_set(const Operator& op, const InvariantSetSpec& set, int samples, int horizon,
                                       std::uint64_t seed) {
  require_applicable(set, op);
  if (samples < 1 || horizon < 0) throw Error(ErrorCode::InvalidArgument, "samples >= 1 and horizon >= 0 required");
  InvariantSetReport report{set.name(), samples, horizon, 0.0, 0.0};
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    SimplexPoint x = sample_member(set, op, rng);
    const double d0 = membership_defect(set, op, x);
    report.initial_max_defect = std::max(report.initial_max_defect, d0);
    report.max_defect = std::max(report.max_defect, d0);
    for (int n = 0; n < horizon; ++n) {
      x = apply(op.tensor, x);
      report.max_defect = std::max(report.max_defect, membership_defect(set, op, x));
    }
  }
  return report;
}

}  // namespace qso
