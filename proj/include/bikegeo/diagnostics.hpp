#ifndef BIKEGEO_DIAGNOSTICS_HPP
#define BIKEGEO_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace bikegeo {

// One invariant check: the measured worst-case value against its bound.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// Named suites: "elliptic", "dynamics", "rodshape", "closedform",
// "transforms", or "all".  Throws DomainError for unknown names.
std::vector<CheckResult> run_check_suite(const std::string& suite);

}  // namespace bikegeo

#endif  // BIKEGEO_DIAGNOSTICS_HPP
