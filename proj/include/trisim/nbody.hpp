#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trisim/vec3.hpp"

namespace trisim::nbody {

struct Body {
  double mass = 0.0;  // kg
  Vec3 pos;           // m
  Vec3 vel;           // m/s
};

struct SpringConfig {
  // Stiffness and damping are tuned together: k is the softest value whose
  // undamped (c = 0) run still conserves energy comfortably, and c sits at
  // the critical damping of a lump pair, which maximises tidal dissipation
  // per pericentre pass. Together they make the eccentricity decay of the
  // default orbit clearly visible within t_total.
  double k = 2e18;    // N/m
  double l0 = 1e6;    // m, unstressed length
  double c = 2.8e20;  // N·s/m, damping

  bool operator==(const SpringConfig&) const = default;
};

/// Planet plus a three-lump satellite. Defaults are the reference
/// configuration: a 2e27 kg planet orbited at 1e8 m (apocentre,
/// eccentricity 0.6) by a 3e22 kg satellite whose lumps sit on an
/// equilateral triangle of side 1e6 m.
struct NBodyConfig {
  double G = 6.67384e-11;         // m^3 kg^-1 s^-2
  double planet_mass = 2e27;      // kg
  double satellite_mass = 3e22;   // kg, total of the three lumps
  double dt0 = 10.0;              // s, initial step
  double t_total = 125000.0;      // s
  int origin_body = 0;            // diagnostics frame (0 = planet)
  double tolerance = 100.0;       // m, per-step positional error bound
  double d0 = 1e8;                // m, initial orbital distance
  SpringConfig spring;
  double e0 = 0.6;                // initial eccentricity
  int record_every = 100;         // steps between samples
  std::uint64_t seed = 0;         // reserved; the engine is deterministic

  bool operator==(const NBodyConfig&) const = default;
};

struct NBodyState {
  double t = 0.0;
  std::array<Body, 4> bodies;  // [0] planet, [1..3] satellite lumps
  double dt = 0.0;             // current adaptive step
  int success_streak = 0;      // step-size controller bookkeeping
};

struct OrbitalElements {
  double a = 0.0;           // m, semi-major axis
  double e = 0.0;           // eccentricity
  double p = 0.0;           // m, semi-latus rectum a(1-e^2)
  double E_specific = 0.0;  // J/kg
  double H_specific = 0.0;  // m^2/s
};

struct Sample {
  double t = 0.0;
  double a = 0.0;
  double e = 0.0;
  double E_specific = 0.0;
  double H_specific = 0.0;
};

struct RunRecord {
  static constexpr int kMaxSamples = 1000;
  std::vector<Sample> samples;
  NBodyConfig config_echo;
};

/// Newtonian pairwise accelerations; throws SingularityError naming the
/// coincident pair.
std::vector<Vec3> gravitational_accelerations(const std::vector<Body>& bodies, double G);

/// Damped spring forces for the three lumps (springs 0-1, 1-2, 2-0).
/// Tension k(l'-l0) + c·dl'/dt acts inward along each spring axis, so the
/// damping term always opposes the length change; forces sum to zero and
/// carry no net torque.
std::array<Vec3, 3> spring_forces(const std::array<Body, 3>& lumps, const SpringConfig& spring);

/// EH = -G·M_tot/R + V^2/2 with R, V the satellite-CoM distance and speed
/// relative to the origin body and M_tot the sum of all four masses.
double specific_orbital_energy(const NBodyState& state, double G, int origin_body = 0);

/// a = -G·M_tot/(2·EH), H = |r x v|, e = sqrt(1 - H^2/(G·M_tot·a)) with the
/// radicand clamped at 0, p = a(1-e^2). Throws DomainError when unbound.
OrbitalElements orbital_elements(const NBodyState& state, double G, int origin_body = 0);

/// Planet at the origin at rest; satellite CoM at (d0, 0, 0) moving in +y
/// at the apocentre speed sqrt(G·M_tot·(1-e0)/d0); lumps on an in-plane
/// equilateral triangle, spinning about z at the orbital angular velocity.
NBodyState initial_state(const NBodyConfig& config);

/// One accepted adaptive step: RK4 compared against two half steps, max
/// per-body positional discrepancy kept <= tolerance; dt halves on failure
/// and doubles after five straight successes, capped at 16·dt0.
NBodyState step(const NBodyState& state, const NBodyConfig& config);

/// Integrates t = 0 .. t_total, appending (t, a, e, E, H) after every
/// record_every-th step and at termination; at most kMaxSamples samples
/// are retained (recording stops, integration continues).
RunRecord run(const NBodyConfig& config);

/// Diagnostics for conservation checks.
double total_energy(const NBodyState& state, const NBodyConfig& config);
Vec3 total_momentum(const NBodyState& state);
Vec3 total_angular_momentum(const NBodyState& state);  // about the system CoM

/// Runs free point masses (no springs) through the same adaptive stepper,
/// so reduced systems such as a two-body Kepler problem can be checked
/// against closed-form oracles.
std::vector<Body> integrate_point_masses(std::vector<Body> bodies, double G, double t_span,
                                         double dt0, double tolerance);

}  // namespace trisim::nbody
