#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "trisim/prng.hpp"

namespace trisim::numerics {

/// First-order ODE system y' = rhs(t, y) with fixed dimension.
struct OdeSystem {
  int dimension = 0;
  /// Writes rhs(t, y) into dydt; both spans have length `dimension`.
  std::function<void(double t, const double* y, double* dydt)> rhs;
};

/// One explicit Euler step: y + dt * rhs(t, y). Throws NumericError on a
/// non-finite derivative.
std::vector<double> euler_step(const OdeSystem& sys, double t,
                               const std::vector<double>& y, double dt);

/// One classic 4-stage Runge-Kutta step (4th order).
std::vector<double> rk4_step(const OdeSystem& sys, double t,
                             const std::vector<double>& y, double dt);

struct AdaptiveResult {
  std::vector<double> y;
  long steps_taken = 0;
};

/// Integrates y from t0 to t1 with RK4 and step-doubling control: each
/// step is accepted only when the max-abs discrepancy between one full
/// step and two half steps is <= tol. Rejected steps halve dt; a run of
/// accepted steps doubles it. Throws StiffnessError when dt collapses.
AdaptiveResult adaptive_integrate(const OdeSystem& sys, double t0,
                                  const std::vector<double>& y0, double t1,
                                  double tol);

/// Monte Carlo estimate of an integral over [a,b].
struct McEstimate {
  double mean = 0.0;       ///< (b-a) * average of the sampled values
  double std_error = 0.0;  ///< (b-a) * sample-stddev / sqrt(n)
  long long n = 0;
};

/// Estimates integral_a^b f(x) dx from n samples at seeded-uniform
/// points. The i-th point is a + (b-a) * Prng::at_double(seed, i), so the
/// result is identical for any thread count. Accumulation runs over
/// fixed-size chunks (serial within a chunk, chunk sums added in index
/// order), which pins the floating-point result bit-for-bit; OpenMP only
/// distributes chunks. Throws NumericError on a non-finite sample;
/// requires n >= 2 and b > a.
McEstimate monte_carlo_mean(const std::function<double(double)>& f, double a,
                            double b, long long n, std::uint64_t seed);

}  // namespace trisim::numerics
