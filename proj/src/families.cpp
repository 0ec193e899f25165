#include "qso/families.hpp"

#include <array>
#include <cstdio>

#include "qso/error.hpp"

namespace qso {

namespace {

struct NameEntry {
  Family family;
  std::string_view name;
};

constexpr std::array<NameEntry, 20> kNames{{
    {Family::REGULAR, "REGULAR"},
    {Family::QUASI_STRICT, "QUASI_STRICT"},
    {Family::ALPHA_COMBINATION, "ALPHA_COMBINATION"},
    {Family::V0, "V0"},
    {Family::V1, "V1"},
    {Family::V2, "V2"},
    {Family::V3, "V3"},
    {Family::V4, "V4"},
    {Family::V5, "V5"},
    {Family::V6, "V6"},
    {Family::V7, "V7"},
    {Family::ZAKHAREVICH, "ZAKHAREVICH"},
    {Family::KHUKR, "KHUKR"},
    {Family::VALLANDER_THETA, "VALLANDER_THETA"},
    {Family::GANIKHODJAEV_LAMBDA, "GANIKHODJAEV_LAMBDA"},
    {Family::VALLANDER_SPIRAL, "VALLANDER_SPIRAL"},
    {Family::GSN_ALPHA, "GSN_ALPHA"},
    {Family::GSN_BETA, "GSN_BETA"},
    {Family::JJPH_THETA, "JJPH_THETA"},
    {Family::CUSTOM, "CUSTOM"},
}};

// Each S^2 basic operator has components of the shape x_a^2 + 2 x_b x_c,
// written here 1-based as {a, b, c}.
using Component = std::array<int, 3>;
using S2Shape = std::array<Component, 3>;

CoefficientTensor from_shape(const S2Shape& shape) {
  std::vector<TensorEntry> entries;
  for (int k = 0; k < 3; ++k) {
    const auto& [a, b, c] = shape[static_cast<std::size_t>(k)];
    entries.push_back({a, a, k + 1, 1.0});
    entries.push_back({b, c, k + 1, 1.0});
  }
  return build_tensor(3, entries);
}

CoefficientTensor basic(Family f) {
  switch (f) {
    case Family::V0: return from_shape({{{1, 2, 3}, {2, 1, 3}, {3, 1, 2}}});
    case Family::V1: return from_shape({{{1, 1, 2}, {2, 1, 3}, {3, 2, 3}}});
    case Family::V2: return from_shape({{{1, 1, 2}, {2, 2, 3}, {3, 1, 3}}});
    case Family::V3: return from_shape({{{1, 1, 3}, {2, 1, 2}, {3, 2, 3}}});
    case Family::V4: return from_shape({{{2, 1, 2}, {3, 2, 3}, {1, 1, 3}}});
    case Family::V5: return from_shape({{{3, 1, 2}, {1, 2, 3}, {2, 1, 3}}});
    case Family::V6: return from_shape({{{3, 2, 3}, {1, 1, 3}, {2, 1, 2}}});
    case Family::V7: return from_shape({{{2, 2, 3}, {3, 1, 3}, {1, 1, 2}}});
    case Family::ZAKHAREVICH: return from_shape({{{1, 1, 2}, {2, 2, 3}, {3, 1, 3}}});
    case Family::KHUKR: {
      // (x1^2 + (x2 + x3)^2, 2 x1 x3, 2 x1 x2)
      const std::vector<TensorEntry> entries{
          {1, 1, 1, 1.0}, {2, 2, 1, 1.0}, {3, 3, 1, 1.0}, {2, 3, 1, 1.0}, {1, 3, 2, 1.0}, {1, 2, 3, 1.0},
      };
      return build_tensor(3, entries);
    }
    default: break;
  }
  throw Error(ErrorCode::UnknownFamily, std::string(to_string(f)) + " is not a basic S^2 operator");
}

void require_m(int m) {
  if (m < 3) throw Error(ErrorCode::DimensionTooSmall, "m must be at least 3, got " + std::to_string(m));
}

void require_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::WeightOutOfRange, "parameter " + std::to_string(w));
}

}  // namespace

std::string_view to_string(Family f) {
  for (const auto& e : kNames) {
    if (e.family == f) return e.name;
  }
  return "UNKNOWN";
}

Family parse_family(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.family;
  }
  throw Error(ErrorCode::UnknownFamily, "no family named '" + std::string(name) + "'");
}

bool is_s2_family(Family f) {
  switch (f) {
    case Family::REGULAR:
    case Family::QUASI_STRICT:
    case Family::ALPHA_COMBINATION:
    case Family::CUSTOM: return false;
    default: return true;
  }
}

bool takes_parameter(Family f) {
  switch (f) {
    case Family::ALPHA_COMBINATION:
    case Family::VALLANDER_THETA:
    case Family::GANIKHODJAEV_LAMBDA:
    case Family::VALLANDER_SPIRAL:
    case Family::GSN_ALPHA:
    case Family::GSN_BETA:
    case Family::JJPH_THETA: return true;
    default: return false;
  }
}

bool takes_permutation(Family f) { return f == Family::QUASI_STRICT || f == Family::ALPHA_COMBINATION; }

void validate(const FamilySpec& spec) {
  const auto name = std::string(to_string(spec.family));
  if (spec.family == Family::CUSTOM) return;
  if (takes_parameter(spec.family)) {
    if (!spec.parameter) throw Error(ErrorCode::MissingParameter, name + " requires a parameter");
    require_weight(*spec.parameter);
  } else if (spec.parameter) {
    throw Error(ErrorCode::UnexpectedParameter, name + " takes no parameter");
  }
  if (takes_permutation(spec.family)) {
    if (!spec.permutation) throw Error(ErrorCode::MissingParameter, name + " requires a permutation");
  } else if (spec.permutation) {
    throw Error(ErrorCode::UnexpectedParameter, name + " takes no permutation");
  }
  if (is_s2_family(spec.family)) {
    if (spec.m != 3) throw Error(ErrorCode::DimensionMismatch, name + " acts on S^2 (m = 3)");
  } else {
    require_m(spec.m);
    if (spec.permutation && spec.permutation->size() != spec.m - 1) {
      throw Error(ErrorCode::PermutationSizeMismatch,
                  "permutation acts on " + std::to_string(spec.permutation->size()) + " symbols, expected m-1 = " +
                      std::to_string(spec.m - 1));
    }
  }
}

const std::vector<FamilyInfo>& family_registry() {
  static const std::vector<FamilyInfo> registry{
      {"REGULAR", ">=3", "", false, "x'_k = x_k^2 + 2/(m-2) sum_{i<j; i,j!=k} x_i x_j"},
      {"QUASI_STRICT", ">=3", "", true, "x'_k = 2 x_m x_pi(k) (k<m); x'_m = x_m^2 + (x_1+...+x_{m-1})^2"},
      {"ALPHA_COMBINATION", ">=3", "alpha", true, "alpha REGULAR + (1-alpha) QUASI_STRICT"},
      {"V0", "3", "", false, "(x1^2+2x2x3, x2^2+2x1x3, x3^2+2x1x2)"},
      {"V1", "3", "", false, "(x1^2+2x1x2, x2^2+2x1x3, x3^2+2x2x3)"},
      {"V2", "3", "", false, "(x1^2+2x1x2, x2^2+2x2x3, x3^2+2x1x3)"},
      {"V3", "3", "", false, "(x1^2+2x1x3, x2^2+2x1x2, x3^2+2x2x3)"},
      {"V4", "3", "", false, "(x2^2+2x1x2, x3^2+2x2x3, x1^2+2x1x3)"},
      {"V5", "3", "", false, "(x3^2+2x1x2, x1^2+2x2x3, x2^2+2x1x3)"},
      {"V6", "3", "", false, "(x3^2+2x2x3, x1^2+2x1x3, x2^2+2x1x2)"},
      {"V7", "3", "", false, "(x2^2+2x2x3, x3^2+2x1x3, x1^2+2x1x2)"},
      {"ZAKHAREVICH", "3", "", false, "(x1^2+2x1x2, x2^2+2x2x3, x3^2+2x1x3)"},
      {"KHUKR", "3", "", false, "(x1^2+(x2+x3)^2, 2x1x3, 2x1x2)"},
      {"VALLANDER_THETA", "3", "theta", false, "theta V1 + (1-theta) V0"},
      {"GANIKHODJAEV_LAMBDA", "3", "lambda", false, "lambda V0 + (1-lambda) V2"},
      {"VALLANDER_SPIRAL", "3", "lambda", false, "lambda V2 + (1-lambda) V3"},
      {"GSN_ALPHA", "3", "alpha", false, "(1-alpha) V2 + alpha V4"},
      {"GSN_BETA", "3", "beta", false, "(1-beta) V2 + beta V5"},
      {"JJPH_THETA", "3", "theta", false, "theta V6 + (1-theta) V7"},
  };
  return registry;
}

CoefficientTensor make_regular(int m) {
  require_m(m);
  std::vector<TensorEntry> entries;
  const double w = 1.0 / (m - 2);
  for (int k = 1; k <= m; ++k) {
    entries.push_back({k, k, k, 1.0});
    for (int i = 1; i <= m; ++i) {
      for (int j = i + 1; j <= m; ++j) {
        if (i != k && j != k) entries.push_back({i, j, k, w});
      }
    }
  }
  return build_tensor(m, entries);
}

CoefficientTensor make_quasi_strict(int m, const Permutation& pi) {
  require_m(m);
  if (pi.size() != m - 1) {
    throw Error(ErrorCode::PermutationSizeMismatch,
                "permutation acts on " + std::to_string(pi.size()) + " symbols, expected m-1 = " +
                    std::to_string(m - 1));
  }
  std::vector<TensorEntry> entries;
  for (int k = 1; k < m; ++k) entries.push_back({pi(k), m, k, 1.0});
  for (int i = 1; i < m; ++i) {
    for (int j = i; j < m; ++j) entries.push_back({i, j, m, 1.0});
  }
  entries.push_back({m, m, m, 1.0});
  return build_tensor(m, entries);
}

CoefficientTensor make_alpha_combination(int m, const Permutation& pi, double alpha) {
  require_weight(alpha);
  return convex_combine(make_regular(m), make_quasi_strict(m, pi), alpha);
}

CoefficientTensor make_s2(Family name, std::optional<double> parameter) {
  if (!is_s2_family(name)) {
    throw Error(ErrorCode::UnknownFamily, std::string(to_string(name)) + " is not an S^2 family");
  }
  if (!takes_parameter(name)) {
    if (parameter) throw Error(ErrorCode::UnexpectedParameter, std::string(to_string(name)) + " takes no parameter");
    return basic(name);
  }
  if (!parameter) throw Error(ErrorCode::MissingParameter, std::string(to_string(name)) + " requires a parameter");
  const double w = *parameter;
  require_weight(w);
  switch (name) {
    case Family::VALLANDER_THETA: return convex_combine(basic(Family::V1), basic(Family::V0), w);
    case Family::GANIKHODJAEV_LAMBDA: return convex_combine(basic(Family::V0), basic(Family::V2), w);
    case Family::VALLANDER_SPIRAL: return convex_combine(basic(Family::V2), basic(Family::V3), w);
    case Family::GSN_ALPHA: return convex_combine(basic(Family::V4), basic(Family::V2), w);
    case Family::GSN_BETA: return convex_combine(basic(Family::V5), basic(Family::V2), w);
    case Family::JJPH_THETA: return convex_combine(basic(Family::V6), basic(Family::V7), w);
    default: break;
  }
  throw Error(ErrorCode::UnknownFamily, std::string(to_string(name)));
}

CoefficientTensor make_tensor(const FamilySpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::REGULAR: return make_regular(spec.m);
    case Family::QUASI_STRICT: return make_quasi_strict(spec.m, *spec.permutation);
    case Family::ALPHA_COMBINATION: return make_alpha_combination(spec.m, *spec.permutation, *spec.parameter);
    case Family::CUSTOM: throw Error(ErrorCode::UnknownFamily, "CUSTOM operators are loaded from tensor files");
    default: return make_s2(spec.family, spec.parameter);
  }
}

std::string Operator::label() const {
  std::string out(to_string(spec.family));
  out += "(m=" + std::to_string(spec.m);
  if (spec.permutation) out += ", pi=" + spec.permutation->to_string();
  if (spec.parameter) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *spec.parameter);
    out += ", param=";
    out += buf;
  }
  return out + ")";
}

Operator make_operator(const FamilySpec& spec) { return Operator{spec, make_tensor(spec)}; }

Operator custom_operator(CoefficientTensor tensor) {
  FamilySpec spec;
  spec.family = Family::CUSTOM;
  spec.m = tensor.dim();
  return Operator{std::move(spec), std::move(tensor)};
}

}  // namespace qso
