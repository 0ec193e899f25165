#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qso {

enum class Suite { REGULAR, QUASI_STRICT, ALPHA, S2_THEOREMS, SCALAR, CORE_PROPERTIES, ALL };

/// "regular", "quasi_strict", ... "all". Throws InvalidArgument.
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite s);

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string measured;
};

/// Runs the theorem checks grouped under `suite`, seeded from `seed`.
std::vector<CheckResult> run_suite(Suite suite, std::uint64_t seed);

/// One line per check, "PASS [C7] name: measured", then a totals line.
std::string format_results(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qso
