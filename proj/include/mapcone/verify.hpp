#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mapcone {

struct CheckResult {
  std::string id;
  int criterion = 0;
  bool pass = false;
  double measured = 0.0;   // worst observed value of the tested quantity
  double tolerance = 0.0;  // threshold it was compared against
  std::string detail;
};

struct BatteryOptions {
  std::uint64_t seed = 0x5EED;
  /// Flips the sign of the l1*l2*l3 coefficient in the polynomial route of
  /// the determinant checks. Exists for mutation-sensitivity testing: the
  /// determinant/polynomial consistency check must detect the change.
  bool mutate_dt = false;
};

/// Runs the invariant battery. criterion == 0 runs everything; 1..8 runs
/// only the checks belonging to that group.
std::vector<CheckResult> run_battery(const BatteryOptions& opt = {}, int criterion = 0);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace mapcone
