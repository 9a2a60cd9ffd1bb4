#pragma once

#include <cstdint>
#include <functional>

#include "trisim/cellular.hpp"
#include "trisim/numerics.hpp"

namespace trisim::reference {

/// Serial re-implementations of the parallel kernels, written
/// independently (direct bit tests, explicit boundary branches, plain
/// sequential accumulation). Tests check the engines against these;
/// trisim_bench times the two side by side.

cellular::CaRow eca_step(const cellular::CaRow& row, int rule_number);

cellular::LifeGrid life_step(const cellular::LifeGrid& grid);

numerics::McEstimate monte_carlo_mean(const std::function<double(double)>& f,
                                      double a, double b, long long n,
                                      std::uint64_t seed);

}  // namespace trisim::reference
