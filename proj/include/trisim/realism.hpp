#pragma once

#include <string>
#include <vector>

#include "trisim/config.hpp"

namespace trisim::realism {

/// The measured gravitational constant, m^3 kg^-1 s^-2.
inline constexpr double kReferenceG = 6.67384e-11;

struct Warning {
  std::string key;      // offending config key
  double given = 0.0;
  double reference = 0.0;  // value or bound it was compared against
  std::string message;
};

struct RealismReport {
  std::vector<Warning> warnings;

  /// "empirical" when nothing was flagged, "imaginary" otherwise: a run
  /// whose constants cannot belong to the world the reference values
  /// describe. Advisory only; nothing is blocked.
  std::string classification() const { return warnings.empty() ? "empirical" : "imaginary"; }
};

/// Flags G away from the measured constant (relative deviation > 1e-6), a
/// satellite heavier than its planet, and masses outside the configured
/// bounds. Warnings never reject the run; a determined user can always
/// fool hard limits, so there are none.
RealismReport realism_guard(const config::NbodyRun& run);

/// Human-readable report, one line per warning plus the classification.
std::string format_report(const RealismReport& report);

}  // namespace trisim::realism
