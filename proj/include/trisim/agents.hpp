#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "trisim/prng.hpp"

namespace trisim::agents {

enum class Cell : std::uint8_t { Empty, A, B };

struct Board {
  int rows = 0;
  int cols = 0;
  std::vector<Cell> cells;  // row-major

  Board() = default;
  Board(int r, int c) : rows(r), cols(c), cells(static_cast<size_t>(r) * c, Cell::Empty) {}

  Cell& at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }
  Cell at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const Board& o) const = default;
};

enum class MoveRule : std::uint8_t { RandomVacancy, NearestSatisfyingVacancy };

struct SchellingConfig {
  int rows = 13;
  int cols = 16;
  double frac_a = 0.45;
  double frac_b = 0.45;
  double frac_empty = 0.10;
  double threshold = 0.5;  // min like-fraction among occupied neighbours
  int max_sweeps = 200;
  MoveRule move_rule = MoveRule::NearestSatisfyingVacancy;
  std::uint64_t seed = 0;

  bool operator==(const SchellingConfig&) const = default;
};

/// Schelling's line: agents only, no fixed vacancies. A mover is removed
/// and reinserted at the nearest satisfying gap.
struct Line1D {
  static constexpr int kPopulation = 70;
  static constexpr int kRadius = 4;
  std::vector<Cell> cells;  // A/B only

  bool operator==(const Line1D& o) const = default;
};

struct SweepSample {
  int sweep = 0;
  int discontent = 0;
  double seg_index = 0.0;
};

struct SegregationTrace {
  std::vector<SweepSample> sweeps;
  std::variant<Board, Line1D> final_state;
  bool converged = false;
};

/// Seeded board draw matching the requested fractions. Cell counts come
/// from largest-remainder apportionment (ties broken A, B, Empty), then a
/// Fisher-Yates shuffle of the flattened board.
Board init_board(const SchellingConfig& config);

/// True iff like/(like+unlike) >= threshold over the occupied Moore
/// neighbours of (r,c). An agent with no occupied neighbour is content.
/// Throws DomainError when (r,c) is empty.
bool contentment(const Board& board, int r, int c, double threshold);

/// Hypothetical contentment of an agent of `type` placed at (r,c).
bool would_be_content(const Board& board, int r, int c, Cell type, double threshold);

int discontent_count(const Board& board, double threshold);

struct SweepResult {
  Board board;
  int moved = 0;
};

/// One sweep: occupied cells (as of sweep start) visited in a seeded
/// random permutation; each discontent agent moves per the move rule,
/// with moves taking effect immediately.
SweepResult sweep(const Board& board, const SchellingConfig& config, Prng& rng);

/// Sweeps until zero discontent or max_sweeps. Entry 0 of the trace is
/// the measurement before any move.
SegregationTrace run_schelling(const SchellingConfig& config);

/// The 1-D variant: 70 agents (35 A, 35 B shuffled by seed), four
/// neighbours each side truncated at the ends, content iff not minority
/// (like-fraction >= 0.5); discontent agents reinsert at the nearest
/// satisfying gap, visited in seeded random order.
SegregationTrace run_schelling_1d(std::uint64_t seed, int max_sweeps);

/// Mean like-fraction among agents that have at least one occupied
/// neighbour. Throws DomainError when no agent qualifies.
double segregation_index(const Board& board);
double segregation_index(const Line1D& line);

int discontent_count(const Line1D& line);

}  // namespace trisim::agents
