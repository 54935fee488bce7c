#pragma once

#include <string>
#include <vector>

#include "irstool/experiment.hpp"

namespace irstool {

struct ToleranceProfile {
  double mc_sigma = 3.0;        // multiplier on standard errors for MC checks
  double oracle_tol = 1e-9;     // absolute tolerance for quadrature agreement
  double ks_threshold = 0.01;   // two-sample KS cutoff for the identity check
  double phase_tol = 1e-9;      // relative tolerance for phase optimality
};

struct CheckResult {
  std::string name;
  bool pass = false;
  bool informational = false;
  std::string detail;  // expected / observed / tolerance in one line
  double ms = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

ValidationReport run_validate(const ExperimentSpec& spec, unsigned threads = 0,
                              const ToleranceProfile& profile = {});
std::string render_report(const ValidationReport& report);

}  // namespace irstool
