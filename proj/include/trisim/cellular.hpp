#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace trisim::cellular {

/// Wolfram rule: table[4l+2c+r] is bit (4l+2c+r) of the rule number.
struct EcaRule {
  int number = 0;
  std::array<std::uint8_t, 8> table{};

  static EcaRule from_number(int n);
};

enum class Boundary : std::uint8_t { Zero, Wrap };

/// Finite window over the (conceptually infinite) cell line. With Zero
/// boundary the window reproduces the infinite lattice exactly while the
/// light cone of nonzero cells stays interior.
struct CaRow {
  std::vector<std::uint8_t> cells;
  Boundary boundary = Boundary::Zero;

  int width() const { return static_cast<int>(cells.size()); }

  bool operator==(const CaRow& o) const = default;
};

/// One synchronous update; width and boundary are preserved.
CaRow eca_step(const CaRow& row, const EcaRule& rule);

/// steps+1 rows, seed first.
std::vector<CaRow> eca_run(const CaRow& seed, const EcaRule& rule, int steps);

enum class Topology : std::uint8_t { Torus, DeadBorder };

struct LifeGrid {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cells;  // row-major, 0 dead / 1 alive
  Topology topology = Topology::Torus;

  LifeGrid() = default;
  LifeGrid(int r, int c, Topology topo = Topology::Torus)
      : rows(r), cols(c), cells(static_cast<size_t>(r) * c, 0), topology(topo) {}

  std::uint8_t& at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }
  std::uint8_t at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const LifeGrid& o) const = default;
};

/// Conway step: live survives on 2 or 3 Moore neighbours, dead births on
/// exactly 3; all cells update simultaneously.
LifeGrid life_step(const LifeGrid& grid);

/// steps+1 snapshots, seed first.
std::vector<LifeGrid> life_run(const LifeGrid& grid, int steps);

}  // namespace trisim::cellular
