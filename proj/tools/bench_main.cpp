#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "trisim/cellular.hpp"
#include "trisim/numerics.hpp"
#include "trisim/prng.hpp"
#include "trisim/reference.hpp"

// Times each parallel kernel against its independently written serial
// reference and checks that the two agree before reporting.

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-14s %10.1f ms %10.1f ms   %.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

void bench_eca() {
  constexpr int kWidth = 1 << 15;
  constexpr int kSteps = 1024;
  constexpr int kRule = 30;

  trisim::cellular::CaRow seed;
  seed.boundary = trisim::cellular::Boundary::Wrap;
  seed.cells.resize(kWidth);
  trisim::Prng rng(7);
  for (auto& c : seed.cells) c = rng.next_double() < 0.5 ? 1 : 0;

  trisim::cellular::CaRow serial = seed;
  auto t0 = Clock::now();
  for (int s = 0; s < kSteps; ++s) serial = trisim::reference::eca_step(serial, kRule);
  const double serial_ms = elapsed_ms(t0);

  const trisim::cellular::EcaRule rule = trisim::cellular::EcaRule::from_number(kRule);
  trisim::cellular::CaRow parallel = seed;
  t0 = Clock::now();
  for (int s = 0; s < kSteps; ++s) parallel = trisim::cellular::eca_step(parallel, rule);
  const double parallel_ms = elapsed_ms(t0);

  if (!(serial == parallel)) {
    std::fprintf(stderr, "eca: serial and parallel kernels disagree\n");
    std::exit(1);
  }
  report("eca rule 30", serial_ms, parallel_ms);
}

void bench_life() {
  constexpr int kSize = 384;
  constexpr int kSteps = 128;

  trisim::cellular::LifeGrid seed(kSize, kSize, trisim::cellular::Topology::Torus);
  trisim::Prng rng(7);
  for (auto& c : seed.cells) c = rng.next_double() < 0.35 ? 1 : 0;

  trisim::cellular::LifeGrid serial = seed;
  auto t0 = Clock::now();
  for (int s = 0; s < kSteps; ++s) serial = trisim::reference::life_step(serial);
  const double serial_ms = elapsed_ms(t0);

  trisim::cellular::LifeGrid parallel = seed;
  t0 = Clock::now();
  for (int s = 0; s < kSteps; ++s) parallel = trisim::cellular::life_step(parallel);
  const double parallel_ms = elapsed_ms(t0);

  if (!(serial == parallel)) {
    std::fprintf(stderr, "life: serial and parallel kernels disagree\n");
    std::exit(1);
  }
  report("life 384x384", serial_ms, parallel_ms);
}

void bench_mc() {
  constexpr long long kN = 1 << 23;
  const auto f = [](double x) { return std::sqrt(1.0 - x * x); };

  auto t0 = Clock::now();
  const auto serial = trisim::reference::monte_carlo_mean(f, 0.0, 1.0, kN, 7);
  const double serial_ms = elapsed_ms(t0);

  t0 = Clock::now();
  const auto parallel = trisim::numerics::monte_carlo_mean(f, 0.0, 1.0, kN, 7);
  const double parallel_ms = elapsed_ms(t0);

  // Same sample values; only the summation order differs.
  if (std::abs(serial.mean - parallel.mean) > 1e-9) {
    std::fprintf(stderr, "mc: serial and parallel estimates disagree\n");
    std::exit(1);
  }
  report("mc n=2^23", serial_ms, parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serial code\n");
#endif
  std::printf("%-14s %13s %13s   %s\n", "kernel", "serial", "parallel", "speedup");
  bench_eca();
  bench_life();
  bench_mc();
  return 0;
}
