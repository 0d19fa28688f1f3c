#pragma once

#include <string>
#include <vector>

namespace hslab {

/// Deliberate sign faults used to show that the calibration suite catches
/// convention slips.
struct CalibrationFaults {
  bool flip_dc = false;
  bool flip_star = false;
};

struct CalibrationCheck {
  std::string name;
  bool ok = false;
};

struct CalibrationReport {
  std::vector<CalibrationCheck> checks;

  bool ok() const;
  /// nullptr when every check passed.
  const CalibrationCheck* first_failure() const;
};

/// Exact calibration identities on the Iwasawa model, in a fixed order:
/// "dω_3 = ω_12", "dd^c ω_0", "*d^c ω_0", "F(m,n,p)^2", "alpha round trip",
/// "curvature splitting", "J-twisted codifferential".
CalibrationReport run_calibration(const CalibrationFaults& faults = {});

}  // namespace hslab
