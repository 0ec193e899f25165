#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qso/families.hpp"
#include "qso/simplex.hpp"

namespace qso {

enum class InvariantSetId { M0, M_OMEGA, VALLANDER_DIAG, KHUKR_M_TAU };

std::string_view to_string(InvariantSetId id);
/// Throws InvalidArgument.
InvariantSetId parse_invariant_set(std::string_view name);

struct InvariantSetSpec {
  InvariantSetId id = InvariantSetId::M0;
  int i = 1;           // M_OMEGA: cycle indices (1-based, canonical order)
  int j = 2;
  double omega = 1.0;  // M_OMEGA
  double tau = 1.0;    // KHUKR_M_TAU

  std::string name() const;
};

/// Distance from membership; zero on the set.
///   M0             x_1 ... x_{m-1}
///   M_OMEGA        min(|R/omega - 1|, |R omega - 1|), R = prod_{tau_i} x / prod_{tau_j} x
///   VALLANDER_DIAG |x_1 - x_3|
///   KHUKR_M_TAU    min(|x_2 - tau x_3|, |x_2 - x_3 / tau|)
double membership_defect(const InvariantSetSpec& set, const Operator& op, const SimplexPoint& x);

inline constexpr double kMembershipSampleDefect = 1e-12;

struct InvariantSetReport {
  std::string set;
  int samples = 0;
  int horizon = 0;
  double initial_max_defect = 0.0;
  double max_defect = 0.0;
};

/// Draws seeded points of the set, iterates each `horizon` steps and records
/// the largest defect seen along the way. Throws InapplicableSet.
InvariantSetReport check_invariant_set(const Operator& op, const InvariantSetSpec& set, int samples, int horizon,
                                       std::uint64_t seed);

}  // namespace qso
