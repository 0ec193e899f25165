#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qso/simplex.hpp"
#include "qso/tensor.hpp"

namespace qso {

/// Named operators. The string form of each enumerator is the stable name
/// used on the command line and in reports.
enum class Family {
  REGULAR,            // x'_k = x_k^2 + 2/(m-2) sum_{i<j, i,j != k} x_i x_j
  QUASI_STRICT,       // x'_k = 2 x_m x_pi(k), x'_m = x_m^2 + (1 - x_m)^2
  ALPHA_COMBINATION,  // alpha * REGULAR + (1 - alpha) * QUASI_STRICT
  V0,
  V1,
  V2,
  V3,
  V4,
  V5,
  V6,
  V7,
  ZAKHAREVICH,
  KHUKR,
  VALLANDER_THETA,      // theta V1 + (1 - theta) V0
  GANIKHODJAEV_LAMBDA,  // lambda V0 + (1 - lambda) V2
  VALLANDER_SPIRAL,     // lambda V2 + (1 - lambda) V3
  GSN_ALPHA,            // (1 - alpha) V2 + alpha V4
  GSN_BETA,             // (1 - beta) V2 + beta V5
  JJPH_THETA,           // theta V6 + (1 - theta) V7
  CUSTOM,               // loaded from a tensor file
};

std::string_view to_string(Family f);
/// Throws UnknownFamily.
Family parse_family(std::string_view name);

bool is_s2_family(Family f);
bool takes_parameter(Family f);
bool takes_permutation(Family f);

struct FamilySpec {
  Family family = Family::REGULAR;
  int m = 3;
  std::optional<Permutation> permutation;
  std::optional<double> parameter;
};

/// Throws on missing/unexpected parameter or permutation, parameter outside
/// [0, 1], m != 3 for S^2 families, and m < 3 for the rest.
void validate(const FamilySpec& spec);

struct FamilyInfo {
  std::string name;
  std::string dimension;       // "3" or ">=3"
  std::string parameter_name;  // empty when the family is not parameterized
  bool needs_permutation = false;
  std::string formula;
};

/// Constructible families, in enumeration order (CUSTOM excluded).
const std::vector<FamilyInfo>& family_registry();

CoefficientTensor make_regular(int m);
/// pi permutes {1, ..., m-1}.
CoefficientTensor make_quasi_strict(int m, const Permutation& pi);
CoefficientTensor make_alpha_combination(int m, const Permutation& pi, double alpha);
CoefficientTensor make_s2(Family name, std::optional<double> parameter = std::nullopt);

CoefficientTensor make_tensor(const FamilySpec& spec);

/// A tensor together with the family it came from; analyses whose
/// applicability depends on the family take this.
struct Operator {
  FamilySpec spec;
  CoefficientTensor tensor;

  int dim() const noexcept { return tensor.dim(); }
  std::string label() const;
};

Operator make_operator(const FamilySpec& spec);
Operator custom_operator(CoefficientTensor tensor);

}  // namespace qso
