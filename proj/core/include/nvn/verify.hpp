#pragma once

#include <string>
#include <vector>

namespace nvn {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Runs the invariant suite: residual oracles on every closed-form family,
// isospectrality, conservation, separability, the uncertainty inequality,
// the cross-derivation consistency check and a fault-injection sensitivity
// test of the residual detector. Full adds the integrator checks.
VerifyReport verify_suite(VerifyLevel level);

std::string format_report(const VerifyReport& report);

}  // namespace nvn
