#include "qso/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qso {

namespace {

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_string(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

void write(std::string& out, const Json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, key);
        out += indent < 0 ? ":" : ": ";
        write(out, item, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Flat numeric arrays stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += flat ? ", " : ",";
        if (!flat) newline(depth + 1);
        write(out, v[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

Json points(const std::vector<SimplexPoint>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

Json to_json(const SimplexPoint& x) {
  Json a = Json::array();
  for (double v : x.coords()) a.push_back(v);
  return a;
}

Json to_json(const FixedPointReport& r) {
  Json ev = Json::array();
  for (const auto& z : r.tangent_eigenvalues) {
    ev.push_back(Json{{"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}});
  }
  return Json{{"point", to_json(r.point)},
              {"residual", r.residual},
              {"classification", std::string(to_string(r.classification))},
              {"tangent_eigenvalues", ev},
              {"transversal_eigenvalue", r.transversal_eigenvalue},
              {"boundary", r.boundary}};
}

Json to_json(const LyapunovReport& r) {
  return Json{{"function", r.function},
              {"direction", std::string(to_string(r.direction))},
              {"n0", r.n0},
              {"samples", r.samples},
              {"horizon", r.horizon},
              {"slack", r.slack},
              {"comparisons", r.comparisons},
              {"violations", r.violations},
              {"worst_violation", r.worst_violation},
              {"worst_sample", r.worst_sample},
              {"worst_step", r.worst_step}};
}

Json to_json(const OmegaSet& r) {
  return Json{{"cluster_count", r.cluster_points.size()},
              {"cluster_points", points(r.cluster_points)},
              {"detected_period", r.detected_period ? Json(*r.detected_period) : Json(nullptr)},
              {"burn_in", r.burn_in},
              {"window", r.window},
              {"cluster_tol", r.cluster_tol},
              {"period_search_max", r.period_search_max},
              {"boundary_start", r.boundary_start}};
}

Json to_json(const InvariantSetReport& r) {
  return Json{{"set", r.set},
              {"samples", r.samples},
              {"horizon", r.horizon},
              {"initial_max_defect", r.initial_max_defect},
              {"max_defect", r.max_defect}};
}

Json to_json(const ContractionReport& r) {
  return Json{{"s", r.s},
              {"bound", r.bound},
              {"worst_factor", r.worst_factor},
              {"worst_pair_factor", r.worst_pair_factor},
              {"blocks", r.blocks},
              {"entry_step", r.entry_step},
              {"vacuous", r.vacuous},
              {"passed", r.passed}};
}

Json to_json(const ErgodicityReport& r) {
  return Json{{"checkpoints", r.checkpoints},
              {"cesaro_means", points(r.means)},
              {"min_coordinate", r.min_coordinate},
              {"fluctuation", r.fluctuation}};
}

Json to_json(const PsiBoundReport& r) {
  return Json{{"m", r.m},
              {"samples", r.samples},
              {"bound", r.bound},
              {"max_psi", r.max_psi},
              {"violations", r.violations},
              {"center_value", r.center_value},
              {"center_gap", r.center_gap}};
}

Json to_json(const MaxNormReport& r) {
  return Json{{"samples", r.samples},
              {"excluded", r.excluded},
              {"violations", r.violations},
              {"min_margin", r.min_margin}};
}

Json to_json(const PeriodicSearchReport& r) {
  return Json{{"n", r.n},
              {"s", r.s},
              {"starts", r.starts},
              {"not_converged", r.not_converged},
              {"fixed_points", points(r.fixed_points)},
              {"period_s_points", points(r.period_s_points)},
              {"counterexamples", points(r.counterexamples)}};
}

Json make_report(const std::string& op, Json parameters, std::uint64_t seed, Json tolerances, Json results) {
  return Json{{"operator", op},
              {"parameters", std::move(parameters)},
              {"seed", seed},
              {"tolerances", std::move(tolerances)},
              {"results", std::move(results)}};
}

}  // namespace qso
