#include "trisim/cellular.hpp"

#include <string>

#include "trisim/errors.hpp"

namespace trisim::cellular {

EcaRule EcaRule::from_number(int n) {
  if (n < 0 || n > 255) {
    throw ConfigError("eca rule must be in 0..255, got " + std::to_string(n));
  }
  EcaRule r;
  r.number = n;
  for (int b = 0; b < 8; ++b) r.table[b] = static_cast<std::uint8_t>((n >> b) & 1);
  return r;
}

CaRow eca_step(const CaRow& row, const EcaRule& rule) {
  const int w = row.width();
  if (w < 1) throw ConfigError("eca row width must be >= 1");

  // Padded copy resolves the boundary once; the inner loop is branch-free.
  std::vector<std::uint8_t> pad(static_cast<size_t>(w) + 2);
  for (int i = 0; i < w; ++i) pad[static_cast<size_t>(i) + 1] = row.cells[i];
  if (row.boundary == Boundary::Wrap) {
    pad[0] = row.cells[w - 1];
    pad[static_cast<size_t>(w) + 1] = row.cells[0];
  }

  CaRow out;
  out.boundary = row.boundary;
  out.cells.resize(static_cast<size_t>(w));
  const std::uint8_t* p = pad.data();
  std::uint8_t* q = out.cells.data();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < w; ++i) {
    q[i] = rule.table[4 * p[i] + 2 * p[i + 1] + p[i + 2]];
  }
  return out;
}

std::vector<CaRow> eca_run(const CaRow& seed, const EcaRule& rule, int steps) {
  if (steps < 0) throw ConfigError("eca steps must be >= 0");
  std::vector<CaRow> rows;
  rows.reserve(static_cast<size_t>(steps) + 1);
  rows.push_back(seed);
  for (int s = 0; s < steps; ++s) rows.push_back(eca_step(rows.back(), rule));
  return rows;
}

LifeGrid life_step(const LifeGrid& grid) {
  const int rows = grid.rows;
  const int cols = grid.cols;
  if (rows < 1 || cols < 1) throw ConfigError("life grid must be at least 1x1");

  LifeGrid out(rows, cols, grid.topology);
  const bool torus = grid.topology == Topology::Torus;

#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    const int rm = torus ? (r + rows - 1) % rows : r - 1;
    const int rp = torus ? (r + 1) % rows : r + 1;
    for (int c = 0; c < cols; ++c) {
      const int cm = torus ? (c + cols - 1) % cols : c - 1;
      const int cp = torus ? (c + 1) % cols : c + 1;
      int n = 0;
      for (int rr : {rm, r, rp}) {
        if (rr < 0 || rr >= rows) continue;
        for (int cc : {cm, c, cp}) {
          if (cc < 0 || cc >= cols) continue;
          if (rr == r && cc == c) continue;
          n += grid.at(rr, cc);
        }
      }
      const std::uint8_t alive = grid.at(r, c);
      out.at(r, c) = static_cast<std::uint8_t>(alive ? (n == 2 || n == 3) : (n == 3));
    }
  }
  return out;
}

std::vector<LifeGrid> life_run(const LifeGrid& grid, int steps) {
  if (steps < 0) throw ConfigError("life steps must be >= 0");
  std::vector<LifeGrid> frames;
  frames.reserve(static_cast<size_t>(steps) + 1);
  frames.push_back(grid);
  for (int s = 0; s < steps; ++s) frames.push_back(life_step(frames.back()));
  return frames;
}

}  // namespace trisim::cellular
