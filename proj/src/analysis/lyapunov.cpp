#include "qso/analysis/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qso/error.hpp"
#include "qso/random.hpp"
#include "qso/tensor.hpp"

namespace qso {

namespace {

constexpr double kParameterMatch = 1e-12;

Direction direction_of(LyapunovId id) {
  switch (id) {
    case LyapunovId::CYCLE_PRODUCT:
    case LyapunovId::CYCLE_SUM:
      return Direction::NON_DECREASING;
    default:
      return Direction::NON_INCREASING;
  }
}

int n0_of(LyapunovId id) {
  return (id == LyapunovId::CYCLE_PRODUCT || id == LyapunovId::CYCLE_SUM) ? 1 : 0;
}

double evaluate_term(const LyapunovTerm& term, const SimplexPoint& x) {
  const int m = x.dim();
  switch (term.id) {
    case LyapunovId::CYCLIC_PRODUCT: {
      double p = 1.0;
      for (int i = 0; i < m; ++i) p *= std::abs(x[i] - x[(i + 1) % m]);
      return p;
    }
    case LyapunovId::CYCLE_PRODUCT: {
      double p = 1.0;
      for (int k : term.cycle) p *= x.at(k);
      return p;
    }
    case LyapunovId::CYCLE_SUM: {
      double s = 0.0;
      for (int k : term.cycle) s += x.at(k);
      return s;
    }
    case LyapunovId::LAST_COORD:
      return x.last();
    case LyapunovId::ABS_DIFF_PRODUCT:
      if (m != 3) throw Error(ErrorCode::DimensionMismatch, "ABS_DIFF_PRODUCT is defined on m = 3");
      return std::abs(x[0] - x[1]) * std::abs(x[1] - x[2]) * std::abs(x[2] - x[0]);
    case LyapunovId::COORD_PRODUCT:
      if (m != 3) throw Error(ErrorCode::DimensionMismatch, "COORD_PRODUCT is defined on m = 3");
      return x[0] * x[1] * x[2];
  }
  return 0.0;
}

bool parameter_is(const Operator& op, double value) {
  return op.spec.parameter && std::abs(*op.spec.parameter - value) <= kParameterMatch;
}

bool term_applicable(const LyapunovTerm& term, const Operator& op) {
  const Family f = op.spec.family;
  switch (term.id) {
    case LyapunovId::CYCLIC_PRODUCT:
      // The product bound (4/m)^m <= 1 needs m >= 4; at m = 3 the product grows.
      return f == Family::REGULAR && op.dim() >= 4;
    case LyapunovId::CYCLE_PRODUCT:
    case LyapunovId::CYCLE_SUM: {
      if (f != Family::QUASI_STRICT || !op.spec.permutation) return false;
      const auto& cycles = op.spec.permutation->cycles();
      return std::find(cycles.begin(), cycles.end(), term.cycle) != cycles.end();
    }
    case LyapunovId::LAST_COORD:
      return f == Family::ALPHA_COMBINATION;
    case LyapunovId::ABS_DIFF_PRODUCT:
      return (f == Family::GSN_ALPHA || f == Family::JJPH_THETA) && parameter_is(op, 0.5);
    case LyapunovId::COORD_PRODUCT:
      return f == Family::VALLANDER_SPIRAL && op.spec.parameter && !parameter_is(op, 0.5);
  }
  return false;
}

std::string term_name(const LyapunovTerm& term) {
  std::string out(to_string(term.id));
  if (!term.cycle.empty()) {
    out += "(";
    for (std::size_t i = 0; i < term.cycle.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(term.cycle[i]);
    }
    out += ")";
  }
  return out;
}

}  // namespace

std::string_view to_string(LyapunovId id) {
  switch (id) {
    case LyapunovId::CYCLIC_PRODUCT: return "CYCLIC_PRODUCT";
    case LyapunovId::CYCLE_PRODUCT: return "CYCLE_PRODUCT";
    case LyapunovId::CYCLE_SUM: return "CYCLE_SUM";
    case LyapunovId::LAST_COORD: return "LAST_COORD";
    case LyapunovId::ABS_DIFF_PRODUCT: return "ABS_DIFF_PRODUCT";
    case LyapunovId::COORD_PRODUCT: return "COORD_PRODUCT";
  }
  return "UNKNOWN";
}

std::string_view to_string(Direction d) {
  return d == Direction::NON_INCREASING ? "NON_INCREASING" : "NON_DECREASING";
}

LyapunovId parse_lyapunov_id(std::string_view name) {
  for (auto id : {LyapunovId::CYCLIC_PRODUCT, LyapunovId::CYCLE_PRODUCT, LyapunovId::CYCLE_SUM,
                  LyapunovId::LAST_COORD, LyapunovId::ABS_DIFF_PRODUCT, LyapunovId::COORD_PRODUCT}) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Lyapunov function '" + std::string(name) + "'");
}

double LyapunovFn::operator()(const SimplexPoint& x) const {
  double v = 0.0;
  for (const auto& term : terms) v += term.weight * evaluate_term(term, x);
  return v;
}

std::string LyapunovFn::name() const {
  if (terms.size() == 1 && terms[0].weight == 1.0) return term_name(terms[0]);
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    std::snprintf(buf, sizeof buf, "%.17g*", terms[i].weight);
    out += buf + term_name(terms[i]);
  }
  return out;
}

LyapunovFn lyapunov_function(LyapunovId id) {
  if (id == LyapunovId::CYCLE_PRODUCT || id == LyapunovId::CYCLE_SUM) {
    throw Error(ErrorCode::MissingParameter, std::string(to_string(id)) + " needs a cycle");
  }
  return LyapunovFn{{LyapunovTerm{id, {}, 1.0}}, direction_of(id), n0_of(id)};
}

LyapunovFn cycle_function(LyapunovId id, const Permutation& pi, int l) {
  if (id != LyapunovId::CYCLE_PRODUCT && id != LyapunovId::CYCLE_SUM) {
    throw Error(ErrorCode::UnexpectedParameter, std::string(to_string(id)) + " takes no cycle");
  }
  const auto& cycles = pi.cycles();
  if (l < 1 || l > static_cast<int>(cycles.size())) {
    throw Error(ErrorCode::IndexOutOfRange, "cycle index " + std::to_string(l) + " out of range");
  }
  return LyapunovFn{{LyapunovTerm{id, cycles[static_cast<std::size_t>(l - 1)], 1.0}}, direction_of(id), n0_of(id)};
}

LyapunovFn composite(std::vector<LyapunovFn> parts, std::vector<double> weights) {
  if (parts.empty() || parts.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "composite needs one weight per function");
  }
  LyapunovFn out;
  out.direction = parts.front().direction;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::InvalidArgument, "composite weights must be nonnegative");
    }
    if (parts[i].direction != out.direction) {
      throw Error(ErrorCode::InvalidArgument, "composite parts must share a direction");
    }
    out.n0 = std::max(out.n0, parts[i].n0);
    for (auto term : parts[i].terms) {
      term.weight *= weights[i];
      out.terms.push_back(std::move(term));
    }
  }
  return out;
}

bool is_applicable(const LyapunovFn& fn, const Operator& op) {
  if (fn.terms.empty()) return false;
  return std::all_of(fn.terms.begin(), fn.terms.end(),
                     [&](const LyapunovTerm& t) { return term_applicable(t, op); });
}

LyapunovReport check_lyapunov(const Operator& op, const LyapunovFn& fn, int samples, int horizon,
                              std::uint64_t seed, double slack) {
  if (!is_applicable(fn, op)) {
    throw Error(ErrorCode::InapplicableFunction, fn.name() + " is not a Lyapunov function for " + op.label());
  }
  if (samples < 1 || horizon < 1) throw Error(ErrorCode::InvalidArgument, "samples and horizon must be >= 1");
  LyapunovReport report;
  report.function = fn.name();
  report.direction = fn.direction;
  report.n0 = fn.n0;
  report.samples = samples;
  report.horizon = horizon;
  report.slack = slack;
  Rng rng(seed);
  const double sign = fn.direction == Direction::NON_INCREASING ? 1.0 : -1.0;
  for (int s = 0; s < samples; ++s) {
    SimplexPoint x = rng.interior_point(op.dim());
    for (int n = 0; n < fn.n0; ++n) x = apply(op.tensor, x);
    double prev = fn(x);
    for (int n = fn.n0; n < horizon; ++n) {
      x = apply(op.tensor, x);
      const double cur = fn(x);
      const double rise = sign * (cur - prev);
      ++report.comparisons;
      if (rise > slack) {
        ++report.violations;
        if (rise > report.worst_violation) {
          report.worst_violation = rise;
          report.worst_sample = s;
          report.worst_step = n;
        }
      }
      prev = cur;
    }
  }
  return report;
}

}  // namespace qso
