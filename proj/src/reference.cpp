#include "trisim/reference.hpp"

#include <cmath>

#include "trisim/errors.hpp"
#include "trisim/prng.hpp"

namespace trisim::reference {

using cellular::Boundary;
using cellular::CaRow;
using cellular::LifeGrid;
using cellular::Topology;

CaRow eca_step(const CaRow& row, int rule_number) {
  const int w = row.width();
  CaRow out;
  out.boundary = row.boundary;
  out.cells.assign(static_cast<size_t>(w), 0);
  for (int i = 0; i < w; ++i) {
    int l, r;
    if (row.boundary == Boundary::Wrap) {
      l = row.cells[static_cast<size_t>((i + w - 1) % w)];
      r = row.cells[static_cast<size_t>((i + 1) % w)];
    } else {
      l = i > 0 ? row.cells[static_cast<size_t>(i - 1)] : 0;
      r = i < w - 1 ? row.cells[static_cast<size_t>(i + 1)] : 0;
    }
    const int c = row.cells[static_cast<size_t>(i)];
    out.cells[static_cast<size_t>(i)] =
        static_cast<std::uint8_t>((rule_number >> (4 * l + 2 * c + r)) & 1);
  }
  return out;
}

LifeGrid life_step(const LifeGrid& grid) {
  LifeGrid out(grid.rows, grid.cols, grid.topology);
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      int live = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int rr = r + dr;
          int cc = c + dc;
          if (grid.topology == Topology::Torus) {
            rr = (rr + grid.rows) % grid.rows;
            cc = (cc + grid.cols) % grid.cols;
          } else if (rr < 0 || rr >= grid.rows || cc < 0 || cc >= grid.cols) {
            continue;
          }
          live += grid.at(rr, cc);
        }
      }
      if (grid.at(r, c)) {
        out.at(r, c) = static_cast<std::uint8_t>(live == 2 || live == 3);
      } else {
        out.at(r, c) = static_cast<std::uint8_t>(live == 3);
      }
    }
  }
  return out;
}

numerics::McEstimate monte_carlo_mean(const std::function<double(double)>& f,
                                      double a, double b, long long n,
                                      std::uint64_t seed) {
  Prng gen(seed);
  double sum = 0.0, sqsum = 0.0;
  for (long long i = 0; i < n; ++i) {
    const double x = a + (b - a) * gen.next_double();
    const double v = f(x);
    if (!std::isfinite(v)) throw NumericError("reference mc: non-finite sample");
    sum += v;
    sqsum += v * v;
  }
  const double nn = static_cast<double>(n);
  const double avg = sum / nn;
  double var = (sqsum - nn * avg * avg) / (nn - 1.0);
  if (var < 0.0) var = 0.0;
  return {(b - a) * avg, (b - a) * std::sqrt(var / nn), n};
}

}  // namespace trisim::reference
