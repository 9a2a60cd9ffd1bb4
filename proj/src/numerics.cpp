#include "trisim/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "trisim/errors.hpp"

namespace trisim::numerics {

namespace {

void check_finite(const std::vector<double>& v, const char* where) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw NumericError(std::string("non-finite value in ") + where);
    }
  }
}

std::vector<double> eval_rhs(const OdeSystem& sys, double t,
                             const std::vector<double>& y) {
  std::vector<double> dydt(static_cast<size_t>(sys.dimension));
  sys.rhs(t, y.data(), dydt.data());
  check_finite(dydt, "rhs");
  return dydt;
}

}  // namespace

std::vector<double> euler_step(const OdeSystem& sys, double t,
                               const std::vector<double>& y, double dt) {
  std::vector<double> k = eval_rhs(sys, t, y);
  std::vector<double> out(y.size());
  for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + dt * k[i];
  return out;
}

std::vector<double> rk4_step(const OdeSystem& sys, double t,
                             const std::vector<double>& y, double dt) {
  const size_t n = y.size();
  std::vector<double> k1 = eval_rhs(sys, t, y);
  std::vector<double> tmp(n);

  for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  std::vector<double> k2 = eval_rhs(sys, t + 0.5 * dt, tmp);

  for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  std::vector<double> k3 = eval_rhs(sys, t + 0.5 * dt, tmp);

  for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
  std::vector<double> k4 = eval_rhs(sys, t + dt, tmp);

  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

AdaptiveResult adaptive_integrate(const OdeSystem& sys, double t0,
                                  const std::vector<double>& y0, double t1,
                                  double tol) {
  if (!(t1 > t0)) throw ConfigError("adaptive_integrate: t1 must exceed t0");
  if (!(tol > 0)) throw ConfigError("adaptive_integrate: tol must be > 0");

  const double span = t1 - t0;
  const double dt_floor = 1e-14 * span;
  double t = t0;
  double dt = span;  // first attempt covers the interval; halves as needed
  std::vector<double> y = y0;
  long steps = 0;
  int streak = 0;

  while (t < t1) {
    double h = std::min(dt, t1 - t);
    std::vector<double> full = rk4_step(sys, t, y, h);
    std::vector<double> half = rk4_step(sys, t, y, 0.5 * h);
    half = rk4_step(sys, t + 0.5 * h, half, 0.5 * h);

    double err = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      err = std::max(err, std::abs(full[i] - half[i]));
    }

    if (err <= tol) {
      y = std::move(half);
      t += h;
      ++steps;
      if (++streak >= 5) {
        dt = std::min(dt * 2.0, span);
        streak = 0;
      }
    } else {
      dt = 0.5 * h;
      streak = 0;
      if (dt < dt_floor) {
        throw StiffnessError(
            "adaptive_integrate: step size underflow at t=" + std::to_string(t),
            t);
      }
    }
  }
  return {std::move(y), steps};
}

McEstimate monte_carlo_mean(const std::function<double(double)>& f, double a,
                            double b, long long n, std::uint64_t seed) {
  if (n < 2) throw ConfigError("monte_carlo_mean: n must be >= 2");
  if (!(b > a)) throw ConfigError("monte_carlo_mean: b must exceed a");

  // Fixed chunking pins the summation order independent of threads.
  constexpr long long kChunk = 8192;
  const long long nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sums(static_cast<size_t>(nchunks));
  std::vector<double> sqsums(static_cast<size_t>(nchunks));
  bool bad = false;

#pragma omp parallel for schedule(static)
  for (long long c = 0; c < nchunks; ++c) {
    const long long lo = c * kChunk;
    const long long hi = std::min(n, lo + kChunk);
    double s = 0.0, s2 = 0.0;
    for (long long i = lo; i < hi; ++i) {
      double x = a + (b - a) * Prng::at_double(seed, static_cast<uint64_t>(i));
      double v = f(x);
      if (!std::isfinite(v)) {
#pragma omp atomic write
        bad = true;
        break;
      }
      s += v;
      s2 += v * v;
    }
    sums[static_cast<size_t>(c)] = s;
    sqsums[static_cast<size_t>(c)] = s2;
  }
  if (bad) throw NumericError("monte_carlo_mean: non-finite sample of f");

  double sum = 0.0, sqsum = 0.0;
  for (long long c = 0; c < nchunks; ++c) {
    sum += sums[static_cast<size_t>(c)];
    sqsum += sqsums[static_cast<size_t>(c)];
  }

  const double nn = static_cast<double>(n);
  const double avg = sum / nn;
  double var = (sqsum - nn * avg * avg) / (nn - 1.0);
  if (var < 0.0) var = 0.0;  // rounding for constant integrands

  McEstimate est;
  est.mean = (b - a) * avg;
  est.std_error = (b - a) * std::sqrt(var / nn);
  est.n = n;
  return est;
}

}  // namespace trisim::numerics
