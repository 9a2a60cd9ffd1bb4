#include "trisim/realism.hpp"

#include <cmath>
#include <cstdio>

namespace trisim::realism {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

RealismReport realism_guard(const config::NbodyRun& run) {
  RealismReport report;
  const nbody::NBodyConfig& e = run.engine;

  if (std::abs(e.G - kReferenceG) > 1e-6 * kReferenceG)
    report.warnings.push_back({"G", e.G, kReferenceG,
                               "gravitational constant differs from the measured value"});

  if (e.satellite_mass > e.planet_mass)
    report.warnings.push_back({"satellite_mass", e.satellite_mass, e.planet_mass,
                               "satellite outweighs the planet it orbits"});

  const config::MassBounds& b = run.bounds;
  if (b.planet_mass_min && e.planet_mass < *b.planet_mass_min)
    report.warnings.push_back({"planet_mass", e.planet_mass, *b.planet_mass_min,
                               "below the configured lower bound"});
  if (b.planet_mass_max && e.planet_mass > *b.planet_mass_max)
    report.warnings.push_back({"planet_mass", e.planet_mass, *b.planet_mass_max,
                               "above the configured upper bound"});
  if (b.satellite_mass_min && e.satellite_mass < *b.satellite_mass_min)
    report.warnings.push_back({"satellite_mass", e.satellite_mass, *b.satellite_mass_min,
                               "below the configured lower bound"});
  if (b.satellite_mass_max && e.satellite_mass > *b.satellite_mass_max)
    report.warnings.push_back({"satellite_mass", e.satellite_mass, *b.satellite_mass_max,
                               "above the configured upper bound"});
  return report;
}

std::string format_report(const RealismReport& report) {
  std::string text;
  for (const Warning& w : report.warnings) {
    text += "warning: " + w.key + " = " + num(w.given) + " (reference " + num(w.reference) +
            "): " + w.message + "\n";
  }
  text += "classification: " + report.classification() + "\n";
  return text;
}

}  // namespace trisim::realism
