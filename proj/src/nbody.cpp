#include "trisim/nbody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "trisim/errors.hpp"
#include "trisim/numerics.hpp"

namespace trisim::nbody {

namespace {

constexpr int kDoubleAfter = 5;        // comfortable steps before dt doubles
constexpr double kSafetyFactor = 4.0;  // accepted discrepancy stays this far under tolerance
constexpr double kGrowthHeadroom = 8.0;  // extra margin required to call a step comfortable
constexpr double kMaxDtFactor = 16.0;  // dt growth cap, in units of dt0
constexpr double kMinDtFactor = 1e-6;  // stiffness floor, in units of dt0
constexpr double kSpringStepsPerPeriod = 20.0;
constexpr double kPi = 3.14159265358979323846;

void validate(const NBodyConfig& c) {
  if (c.G <= 0.0) throw ConfigError("G must be positive");
  if (c.planet_mass <= 0.0 || c.satellite_mass <= 0.0)
    throw ConfigError("masses must be positive");
  if (c.dt0 <= 0.0) throw ConfigError("dt0 must be positive");
  if (c.t_total < 0.0) throw ConfigError("t_total must be non-negative");
  if (c.tolerance <= 0.0) throw ConfigError("tolerance must be positive");
  if (c.d0 <= 0.0) throw ConfigError("d0 must be positive");
  if (c.spring.l0 <= 0.0) throw ConfigError("spring rest length must be positive");
  // k = 0 is allowed so the spring model can be switched off entirely.
  if (c.spring.k < 0.0 || c.spring.c < 0.0)
    throw ConfigError("spring constants must be non-negative");
  if (!(c.e0 >= 0.0 && c.e0 < 1.0)) throw ConfigError("e0 must lie in [0, 1)");
  if (c.record_every < 1) throw ConfigError("record_every must be at least 1");
  if (c.origin_body < 0 || c.origin_body > 3)
    throw ConfigError("origin_body must be one of the four bodies");
}

std::vector<double> pack(const std::array<Body, 4>& bodies) {
  std::vector<double> y(24);
  for (int i = 0; i < 4; ++i) {
    y[6 * i + 0] = bodies[i].pos.x;
    y[6 * i + 1] = bodies[i].pos.y;
    y[6 * i + 2] = bodies[i].pos.z;
    y[6 * i + 3] = bodies[i].vel.x;
    y[6 * i + 4] = bodies[i].vel.y;
    y[6 * i + 5] = bodies[i].vel.z;
  }
  return y;
}

void unpack(const std::vector<double>& y, std::array<Body, 4>& bodies) {
  for (int i = 0; i < 4; ++i) {
    bodies[i].pos = {y[6 * i + 0], y[6 * i + 1], y[6 * i + 2]};
    bodies[i].vel = {y[6 * i + 3], y[6 * i + 4], y[6 * i + 5]};
  }
}

// Gravity over an arbitrary body list, plus the lump springs when enabled
// (bodies 1..3 of a 4-body system).
numerics::OdeSystem make_system(std::vector<double> masses, double G, SpringConfig spring,
                                bool use_spring) {
  const int n = static_cast<int>(masses.size());
  numerics::OdeSystem sys;
  sys.dimension = 6 * n;
  sys.rhs = [masses = std::move(masses), G, spring, use_spring, n](double, const double* y,
                                                                   double* dydt) {
    std::vector<Body> bodies(n);
    for (int i = 0; i < n; ++i) {
      bodies[i].mass = masses[i];
      bodies[i].pos = {y[6 * i + 0], y[6 * i + 1], y[6 * i + 2]};
      bodies[i].vel = {y[6 * i + 3], y[6 * i + 4], y[6 * i + 5]};
    }
    std::vector<Vec3> acc = gravitational_accelerations(bodies, G);
    if (use_spring) {
      const std::array<Body, 3> lumps = {bodies[1], bodies[2], bodies[3]};
      const std::array<Vec3, 3> force = spring_forces(lumps, spring);
      for (int k = 0; k < 3; ++k) acc[k + 1] += force[k] / masses[k + 1];
    }
    for (int i = 0; i < n; ++i) {
      dydt[6 * i + 0] = y[6 * i + 3];
      dydt[6 * i + 1] = y[6 * i + 4];
      dydt[6 * i + 2] = y[6 * i + 5];
      dydt[6 * i + 3] = acc[i].x;
      dydt[6 * i + 4] = acc[i].y;
      dydt[6 * i + 5] = acc[i].z;
    }
  };
  return sys;
}

struct Controller {
  double t = 0.0;
  double dt = 0.0;   // preferred (unclamped) step
  int streak = 0;
  double dt0 = 0.0;
  double tolerance = 0.0;
  double dt_max = 0.0;
};

// Ceiling for the preferred step. Pure gravity is limited only by the
// growth cap. An active spring also needs its fastest normal mode sampled
// densely, both for accuracy and because RK4 turns unstable on an
// oscillator once omega*h passes 2*sqrt(2); a sparsely sampled mode can
// pump energy while staying under the positional tolerance.
double max_step(double dt0, const SpringConfig& spring, const std::array<Body, 4>& bodies) {
  double cap = kMaxDtFactor * dt0;
  if (spring.k > 0.0) {
    double m_min = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 4; ++i) m_min = std::min(m_min, bodies[i].mass);
    const double omega = std::sqrt(3.0 * spring.k / m_min);  // breathing mode
    cap = std::min(cap, 2.0 * kPi / omega / kSpringStepsPerPeriod);
  }
  return cap;
}

// One accepted step. The attempt is capped so it cannot pass t_target, but
// a capped attempt teaches the controller nothing: the stored dt and the
// success streak only react to full-size steps and to genuine failures.
void advance(const numerics::OdeSystem& sys, std::vector<double>& y, Controller& cs,
             double t_target) {
  const int n_bodies = sys.dimension / 6;
  const double cap = t_target - cs.t;
  double h = std::min(cs.dt, cap);
  const bool at_target = h == cap;
  const bool clamped = cap < cs.dt;
  bool failed = false;

  for (;;) {
    if (h < kMinDtFactor * cs.dt0)
      throw StiffnessError("adaptive step collapsed below 1e-6 of the initial step at t = " +
                               std::to_string(cs.t) + " s",
                           cs.t);
    const std::vector<double> y_full = numerics::rk4_step(sys, cs.t, y, h);
    std::vector<double> y_half = numerics::rk4_step(sys, cs.t, y, h / 2);
    y_half = numerics::rk4_step(sys, cs.t + h / 2, y_half, h / 2);

    double err = 0.0;
    for (int b = 0; b < n_bodies; ++b) {
      const double dx = y_full[6 * b + 0] - y_half[6 * b + 0];
      const double dy = y_full[6 * b + 1] - y_half[6 * b + 1];
      const double dz = y_full[6 * b + 2] - y_half[6 * b + 2];
      err = std::max(err, std::sqrt(dx * dx + dy * dy + dz * dz));
    }

    // The discrepancy must stay under the tolerance; the controller aims a
    // safety factor below it so the handful of near-ceiling steps around
    // pericentre do not dominate the accumulated error.
    const double bar = cs.tolerance / kSafetyFactor;
    if (err <= bar) {
      // Local extrapolation: the full/half discrepancy estimates the
      // half-step solution's own error to leading order, so subtracting
      // it buys an extra order at no cost.
      for (int i = 0; i < sys.dimension; ++i)
        y_half[i] += (y_half[i] - y_full[i]) / 15.0;
      y = std::move(y_half);
      cs.t = (!failed && at_target && std::isfinite(t_target)) ? t_target : cs.t + h;
      if (failed) {
        cs.dt = h;
        cs.streak = 0;
      } else if (!clamped) {
        // Grow only from steps with real margin, otherwise the controller
        // saws against its own ceiling.
        if (err <= bar / kGrowthHeadroom) {
          if (++cs.streak >= kDoubleAfter) {
            cs.dt = std::min(cs.dt * 2.0, cs.dt_max);
            cs.streak = 0;
          }
        } else {
          cs.streak = 0;
        }
      }
      return;
    }
    failed = true;
    h /= 2.0;
  }
}

bool springs_active(const SpringConfig& s) { return s.k > 0.0 || s.c > 0.0; }

}  // namespace

std::vector<Vec3> gravitational_accelerations(const std::vector<Body>& bodies, double G) {
  const int n = static_cast<int>(bodies.size());
  std::vector<Vec3> acc(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec3 d = bodies[j].pos - bodies[i].pos;
      const double d2 = norm2(d);
      if (d2 == 0.0)
        throw SingularityError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                                   " coincide",
                               i, j);
      const double inv_d3 = 1.0 / (d2 * std::sqrt(d2));
      acc[i] += (G * bodies[j].mass * inv_d3) * d;
      acc[j] -= (G * bodies[i].mass * inv_d3) * d;
    }
  }
  return acc;
}

std::array<Vec3, 3> spring_forces(const std::array<Body, 3>& lumps, const SpringConfig& spring) {
  std::array<Vec3, 3> force{};
  constexpr int pair[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const auto& [i, j] : pair) {
    const Vec3 d = lumps[j].pos - lumps[i].pos;
    const double len = norm(d);
    if (len == 0.0)
      throw SingularityError("lumps " + std::to_string(i) + " and " + std::to_string(j) +
                                 " coincide",
                             i, j);
    const Vec3 u = d / len;
    const double rate = dot(lumps[j].vel - lumps[i].vel, u);
    // Inward tension; the damping term opposes whichever way the length is
    // changing, which is what dissipates energy over a stress cycle.
    const double tension = spring.k * (len - spring.l0) + spring.c * rate;
    force[i] += tension * u;
    force[j] -= tension * u;
  }
  return force;
}

double specific_orbital_energy(const NBodyState& state, double G, int origin_body) {
  const Body& origin = state.bodies[static_cast<size_t>(origin_body)];
  const auto& b = state.bodies;
  const Vec3 r = (b[1].pos + b[2].pos + b[3].pos) / 3.0 - origin.pos;
  const Vec3 v = (b[1].vel + b[2].vel + b[3].vel) / 3.0 - origin.vel;
  const double R = norm(r);
  if (R == 0.0)
    throw SingularityError("satellite centre of mass coincides with the origin body",
                           origin_body, -1);
  const double m_tot = b[0].mass + b[1].mass + b[2].mass + b[3].mass;
  return -G * m_tot / R + 0.5 * norm2(v);
}

OrbitalElements orbital_elements(const NBodyState& state, double G, int origin_body) {
  const double eh = specific_orbital_energy(state, G, origin_body);
  if (eh >= 0.0) throw DomainError("orbit not elliptical");

  const Body& origin = state.bodies[static_cast<size_t>(origin_body)];
  const auto& b = state.bodies;
  const Vec3 r = (b[1].pos + b[2].pos + b[3].pos) / 3.0 - origin.pos;
  const Vec3 v = (b[1].vel + b[2].vel + b[3].vel) / 3.0 - origin.vel;
  const double m_tot = b[0].mass + b[1].mass + b[2].mass + b[3].mass;
  const double mu = G * m_tot;

  OrbitalElements el;
  el.E_specific = eh;
  el.H_specific = norm(cross(r, v));
  el.a = -mu / (2.0 * eh);
  // Round-off can push the radicand slightly negative for near-circular
  // orbits; clamp instead of letting e go NaN.
  const double radicand = 1.0 - el.H_specific * el.H_specific / (mu * el.a);
  el.e = std::sqrt(std::max(0.0, radicand));
  el.p = el.a * (1.0 - el.e * el.e);
  return el;
}

NBodyState initial_state(const NBodyConfig& config) {
  validate(config);
  if (config.spring.l0 >= config.d0)
    throw ConfigError("satellite larger than its orbit (l0 >= d0)");

  const double m_tot = config.planet_mass + config.satellite_mass;
  const double vv = std::sqrt(config.G * m_tot * (1.0 - config.e0) / config.d0);
  const double omega = vv / config.d0;  // spin-locked to the orbital rate
  const double rho = config.spring.l0 / std::sqrt(3.0);  // triangle circumradius

  NBodyState state;
  state.t = 0.0;
  state.dt = config.dt0;
  state.bodies[0] = {config.planet_mass, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};

  const Vec3 com{config.d0, 0.0, 0.0};
  const std::array<Vec3, 3> offset = {Vec3{rho, 0.0, 0.0},
                                      Vec3{-rho / 2.0, config.spring.l0 / 2.0, 0.0},
                                      Vec3{-rho / 2.0, -config.spring.l0 / 2.0, 0.0}};
  for (int k = 0; k < 3; ++k) {
    Body& lump = state.bodies[k + 1];
    lump.mass = config.satellite_mass / 3.0;
    lump.pos = com + offset[k];
    lump.vel = Vec3{0.0, vv, 0.0} + Vec3{-omega * offset[k].y, omega * offset[k].x, 0.0};
  }
  return state;
}

NBodyState step(const NBodyState& state, const NBodyConfig& config) {
  validate(config);
  std::vector<double> masses(4);
  for (int i = 0; i < 4; ++i) masses[i] = state.bodies[i].mass;
  const numerics::OdeSystem sys =
      make_system(std::move(masses), config.G, config.spring, springs_active(config.spring));

  std::vector<double> y = pack(state.bodies);
  const double dt_max = max_step(config.dt0, config.spring, state.bodies);
  Controller cs{state.t, std::min(state.dt > 0.0 ? state.dt : config.dt0, dt_max),
                state.success_streak, config.dt0, config.tolerance, dt_max};
  advance(sys, y, cs, std::numeric_limits<double>::infinity());

  NBodyState next = state;
  unpack(y, next.bodies);
  next.t = cs.t;
  next.dt = cs.dt;
  next.success_streak = cs.streak;
  return next;
}

RunRecord run(const NBodyConfig& config) {
  validate(config);
  NBodyState state = initial_state(config);

  RunRecord record;
  record.config_echo = config;
  const auto append = [&](const NBodyState& s) {
    if (static_cast<int>(record.samples.size()) >= RunRecord::kMaxSamples) return;
    const OrbitalElements el = orbital_elements(s, config.G, config.origin_body);
    record.samples.push_back({s.t, el.a, el.e, el.E_specific, el.H_specific});
  };

  std::vector<double> masses(4);
  for (int i = 0; i < 4; ++i) masses[i] = state.bodies[i].mass;
  const numerics::OdeSystem sys =
      make_system(std::move(masses), config.G, config.spring, springs_active(config.spring));

  std::vector<double> y = pack(state.bodies);
  const double dt_max = max_step(config.dt0, config.spring, state.bodies);
  Controller cs{0.0, std::min(config.dt0, dt_max), 0, config.dt0, config.tolerance, dt_max};
  long steps = 0;
  while (cs.t < config.t_total) {
    try {
      advance(sys, y, cs, config.t_total);
    } catch (const StiffnessError&) {
      throw;  // already reports the failing time
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (t = " + std::to_string(cs.t) + " s)");
    }
    ++steps;
    if (steps % config.record_every == 0) {
      unpack(y, state.bodies);
      state.t = cs.t;
      append(state);
    }
  }

  unpack(y, state.bodies);
  state.t = cs.t;
  state.dt = cs.dt;
  state.success_streak = cs.streak;
  if (record.samples.empty() || record.samples.back().t != state.t) append(state);
  return record;
}

double total_energy(const NBodyState& state, const NBodyConfig& config) {
  const auto& b = state.bodies;
  double e = 0.0;
  for (const Body& body : b) e += 0.5 * body.mass * norm2(body.vel);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      e -= config.G * b[i].mass * b[j].mass / norm(b[j].pos - b[i].pos);
  constexpr int pair[3][2] = {{1, 2}, {2, 3}, {3, 1}};
  for (const auto& [i, j] : pair) {
    const double stretch = norm(b[j].pos - b[i].pos) - config.spring.l0;
    e += 0.5 * config.spring.k * stretch * stretch;
  }
  return e;
}

Vec3 total_momentum(const NBodyState& state) {
  Vec3 p;
  for (const Body& b : state.bodies) p += b.mass * b.vel;
  return p;
}

Vec3 total_angular_momentum(const NBodyState& state) {
  double m = 0.0;
  Vec3 r_com, v_com;
  for (const Body& b : state.bodies) {
    m += b.mass;
    r_com += b.mass * b.pos;
    v_com += b.mass * b.vel;
  }
  r_com = r_com / m;
  v_com = v_com / m;
  Vec3 l;
  for (const Body& b : state.bodies)
    l += b.mass * cross(b.pos - r_com, b.vel - v_com);
  return l;
}

std::vector<Body> integrate_point_masses(std::vector<Body> bodies, double G, double t_span,
                                         double dt0, double tolerance) {
  if (bodies.empty()) throw ConfigError("no bodies to integrate");
  for (const Body& b : bodies)
    if (b.mass <= 0.0) throw ConfigError("masses must be positive");
  if (G <= 0.0 || dt0 <= 0.0 || tolerance <= 0.0 || t_span < 0.0)
    throw ConfigError("invalid integration parameters");

  std::vector<double> masses(bodies.size());
  for (size_t i = 0; i < bodies.size(); ++i) masses[i] = bodies[i].mass;
  const numerics::OdeSystem sys = make_system(std::move(masses), G, SpringConfig{}, false);

  std::vector<double> y(6 * bodies.size());
  for (size_t i = 0; i < bodies.size(); ++i) {
    y[6 * i + 0] = bodies[i].pos.x;
    y[6 * i + 1] = bodies[i].pos.y;
    y[6 * i + 2] = bodies[i].pos.z;
    y[6 * i + 3] = bodies[i].vel.x;
    y[6 * i + 4] = bodies[i].vel.y;
    y[6 * i + 5] = bodies[i].vel.z;
  }
  Controller cs{0.0, dt0, 0, dt0, tolerance, kMaxDtFactor * dt0};
  while (cs.t < t_span) advance(sys, y, cs, t_span);
  for (size_t i = 0; i < bodies.size(); ++i) {
    bodies[i].pos = {y[6 * i + 0], y[6 * i + 1], y[6 * i + 2]};
    bodies[i].vel = {y[6 * i + 3], y[6 * i + 4], y[6 * i + 5]};
  }
  return bodies;
}

}  // namespace trisim::nbody
