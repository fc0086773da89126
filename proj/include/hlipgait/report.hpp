#pragma once

#include <string>
#include <vector>

namespace hlipgait {

struct PropertyCheck {
  std::string name;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<PropertyCheck> properties;
  int grid = 0;

  bool pass() const;
  const PropertyCheck* find(const std::string& name) const;
  // Names of failing properties, comma separated.
  std::string failures() const;
};

struct VerifyTolerances {
  double boundary = 1e-9;   // swap conditions and endpoint contact
  double kcond = 1e-6;      // end-of-step CoM velocity condition
  double height = 1e-3;     // CoM height deviation
  double margin = 1e-6;     // interior clearance away from the endpoints
  double layer = 0.05;      // fraction of the step at each end held only to clearance > 0
};

}  // namespace hlipgait
