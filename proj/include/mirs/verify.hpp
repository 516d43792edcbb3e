#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mirs::verify {

// One named verification: a claim about computed sequences together with the
// numbers that back the verdict.  Checks are self-contained; each builds the
// sets it needs and runs the engine with deterministic parameters.
struct CheckReport {
  std::string name;
  std::string claim;        // what is being asserted, in words
  nlohmann::json computed;  // the measured quantities
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

struct CheckOptions {
  int horizon = 0;     // 0 = per-check default
  double beta = 0.0;   // bend exponent; 0 = the default sweep {1/2, 1}
  unsigned seed = 20240817;  // seeds the random instances
  bool quick = false;  // reduced instance sizes for fast test sweeps
};

// The registered check names, in reporting order.
std::vector<std::string> check_names();

// Runs one check by name; throws DegenerateInput for unknown names.
CheckReport run_check(const std::string& name, const CheckOptions& opt = {});

}  // namespace mirs::verify
