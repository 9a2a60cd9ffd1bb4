#include "trisim/agents.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "trisim/errors.hpp"

namespace trisim::agents {

namespace {

void validate(const SchellingConfig& c) {
  if (c.rows < 1 || c.cols < 1) throw ConfigError("board dimensions must be positive");
  if (c.frac_a < 0.0 || c.frac_b < 0.0 || c.frac_empty < 0.0)
    throw ConfigError("population fractions must be non-negative");
  if (std::abs(c.frac_a + c.frac_b + c.frac_empty - 1.0) > 1e-9)
    throw ConfigError("population fractions must sum to 1");
  if (!(c.threshold >= 0.0 && c.threshold <= 1.0))
    throw ConfigError("threshold must lie in [0, 1]");
  if (c.max_sweeps < 0) throw ConfigError("max_sweeps must be non-negative");
}

// Largest-remainder apportionment of n cells over {A, B, Empty); ties go to
// the earlier category in that order.
std::array<int, 3> apportion(int n, double fa, double fb, double fe) {
  const std::array<double, 3> quota = {fa * n, fb * n, fe * n};
  std::array<int, 3> count{};
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    count[i] = static_cast<int>(std::floor(quota[i]));
    assigned += count[i];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return quota[a] - count[a] > quota[b] - count[b];
  });
  for (int k = 0; k < n - assigned; ++k) ++count[order[k % 3]];
  return count;
}

template <typename T>
void shuffle_with(std::vector<T>& v, Prng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

Board init_board_impl(const SchellingConfig& config, Prng& rng) {
  validate(config);
  const int n = config.rows * config.cols;
  const auto count = apportion(n, config.frac_a, config.frac_b, config.frac_empty);
  Board board(config.rows, config.cols);
  int k = 0;
  for (int i = 0; i < count[0]; ++i) board.cells[k++] = Cell::A;
  for (int i = 0; i < count[1]; ++i) board.cells[k++] = Cell::B;
  shuffle_with(board.cells, rng);
  return board;
}

struct NeighbourTally {
  int like = 0;
  int unlike = 0;
};

NeighbourTally tally(const Board& board, int r, int c, Cell type) {
  NeighbourTally t;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const int rr = r + dr;
      const int cc = c + dc;
      if (rr < 0 || rr >= board.rows || cc < 0 || cc >= board.cols) continue;
      const Cell n = board.at(rr, cc);
      if (n == Cell::Empty) continue;
      (n == type ? t.like : t.unlike)++;
    }
  }
  return t;
}

bool satisfied(const NeighbourTally& t, double threshold) {
  const int occ = t.like + t.unlike;
  if (occ == 0) return true;
  return static_cast<double>(t.like) / occ >= threshold;
}

// Segregation index that reports NaN instead of throwing, for trace rows on
// boards where no agent has a neighbour.
template <typename S>
double seg_or_nan(const S& state) {
  try {
    return segregation_index(state);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

Board init_board(const SchellingConfig& config) {
  Prng rng(config.seed);
  return init_board_impl(config, rng);
}

bool contentment(const Board& board, int r, int c, double threshold) {
  if (r < 0 || r >= board.rows || c < 0 || c >= board.cols)
    throw DomainError("cell out of range");
  const Cell self = board.at(r, c);
  if (self == Cell::Empty) throw DomainError("contentment of an empty cell");
  return satisfied(tally(board, r, c, self), threshold);
}

bool would_be_content(const Board& board, int r, int c, Cell type, double threshold) {
  return satisfied(tally(board, r, c, type), threshold);
}

int discontent_count(const Board& board, double threshold) {
  int n = 0;
  for (int r = 0; r < board.rows; ++r)
    for (int c = 0; c < board.cols; ++c)
      if (board.at(r, c) != Cell::Empty && !contentment(board, r, c, threshold)) ++n;
  return n;
}

SweepResult sweep(const Board& board, const SchellingConfig& config, Prng& rng) {
  SweepResult result{board, 0};
  Board& b = result.board;

  std::vector<std::pair<int, int>> visit;
  visit.reserve(b.cells.size());
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c)
      if (b.at(r, c) != Cell::Empty) visit.emplace_back(r, c);
  shuffle_with(visit, rng);

  for (const auto& [r, c] : visit) {
    const Cell self = b.at(r, c);
    if (self == Cell::Empty) continue;  // vacated by an earlier mover
    if (satisfied(tally(b, r, c, self), config.threshold)) continue;

    if (config.move_rule == MoveRule::RandomVacancy) {
      std::vector<std::pair<int, int>> empties;
      for (int rr = 0; rr < b.rows; ++rr)
        for (int cc = 0; cc < b.cols; ++cc)
          if (b.at(rr, cc) == Cell::Empty) empties.emplace_back(rr, cc);
      if (empties.empty()) continue;
      const auto [tr, tc] = empties[static_cast<size_t>(rng.next_below(empties.size()))];
      b.at(r, c) = Cell::Empty;
      b.at(tr, tc) = self;
      ++result.moved;
    } else {
      // Evaluate destinations with the agent lifted off the board so its
      // old position does not count towards the new neighbourhood.
      b.at(r, c) = Cell::Empty;
      long best_d2 = -1;
      int best_r = -1, best_c = -1;
      for (int rr = 0; rr < b.rows; ++rr) {
        for (int cc = 0; cc < b.cols; ++cc) {
          if (b.at(rr, cc) != Cell::Empty) continue;
          if (rr == r && cc == c) continue;
          if (!satisfied(tally(b, rr, cc, self), config.threshold)) continue;
          const long d2 = static_cast<long>(rr - r) * (rr - r) +
                          static_cast<long>(cc - c) * (cc - c);
          if (best_d2 < 0 || d2 < best_d2) {
            best_d2 = d2;
            best_r = rr;
            best_c = cc;
          }
        }
      }
      if (best_d2 >= 0) {
        b.at(best_r, best_c) = self;
        ++result.moved;
      } else {
        b.at(r, c) = self;  // nowhere satisfying: stay put
      }
    }
  }
  return result;
}

SegregationTrace run_schelling(const SchellingConfig& config) {
  validate(config);
  Prng rng(config.seed);
  Board board = init_board_impl(config, rng);  // sweeps continue the same stream

  SegregationTrace trace;
  int discontent = discontent_count(board, config.threshold);
  trace.sweeps.push_back({0, discontent, seg_or_nan(board)});
  trace.converged = discontent == 0;

  for (int s = 1; s <= config.max_sweeps && !trace.converged; ++s) {
    board = sweep(board, config, rng).board;
    discontent = discontent_count(board, config.threshold);
    trace.sweeps.push_back({s, discontent, seg_or_nan(board)});
    trace.converged = discontent == 0;
  }
  trace.final_state = std::move(board);
  return trace;
}

double segregation_index(const Board& board) {
  double sum = 0.0;
  int measured = 0;
  for (int r = 0; r < board.rows; ++r) {
    for (int c = 0; c < board.cols; ++c) {
      const Cell self = board.at(r, c);
      if (self == Cell::Empty) continue;
      const NeighbourTally t = tally(board, r, c, self);
      if (t.like + t.unlike == 0) continue;
      sum += static_cast<double>(t.like) / (t.like + t.unlike);
      ++measured;
    }
  }
  if (measured == 0) throw DomainError("no agent has an occupied neighbour");
  return sum / measured;
}

namespace {

NeighbourTally tally_line(const std::vector<Cell>& cells, int i) {
  NeighbourTally t;
  const int n = static_cast<int>(cells.size());
  const int lo = std::max(0, i - Line1D::kRadius);
  const int hi = std::min(n - 1, i + Line1D::kRadius);
  for (int j = lo; j <= hi; ++j) {
    if (j == i) continue;
    (cells[j] == cells[i] ? t.like : t.unlike)++;
  }
  return t;
}

bool line_content(const std::vector<Cell>& cells, int i) {
  const NeighbourTally t = tally_line(cells, i);
  if (t.like + t.unlike == 0) return true;
  return 2 * t.like >= t.like + t.unlike;  // not a minority
}

}  // namespace

int discontent_count(const Line1D& line) {
  int n = 0;
  for (int i = 0; i < static_cast<int>(line.cells.size()); ++i)
    if (!line_content(line.cells, i)) ++n;
  return n;
}

double segregation_index(const Line1D& line) {
  double sum = 0.0;
  int measured = 0;
  for (int i = 0; i < static_cast<int>(line.cells.size()); ++i) {
    const NeighbourTally t = tally_line(line.cells, i);
    if (t.like + t.unlike == 0) continue;
    sum += static_cast<double>(t.like) / (t.like + t.unlike);
    ++measured;
  }
  if (measured == 0) throw DomainError("no agent has a neighbour");
  return sum / measured;
}

SegregationTrace run_schelling_1d(std::uint64_t seed, int max_sweeps) {
  if (max_sweeps < 0) throw ConfigError("max_sweeps must be non-negative");

  constexpr int n = Line1D::kPopulation;
  Prng rng(seed);

  // Agents keep a stable identity so the visiting order is a permutation of
  // agents, not of positions that shift as others move.
  std::vector<Cell> type_of(n);
  for (int i = 0; i < n; ++i) type_of[i] = i < n / 2 ? Cell::A : Cell::B;
  std::vector<int> line(n);
  std::iota(line.begin(), line.end(), 0);
  shuffle_with(line, rng);

  const auto cells_of = [&](const std::vector<int>& ids) {
    std::vector<Cell> cells(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) cells[i] = type_of[ids[i]];
    return cells;
  };

  SegregationTrace trace;
  Line1D snapshot{cells_of(line)};
  int discontent = discontent_count(snapshot);
  trace.sweeps.push_back({0, discontent, seg_or_nan(snapshot)});
  trace.converged = discontent == 0;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int s = 1; s <= max_sweeps && !trace.converged; ++s) {
    shuffle_with(order, rng);
    for (const int id : order) {
      const auto it = std::find(line.begin(), line.end(), id);
      const int i = static_cast<int>(it - line.begin());
      if (line_content(cells_of(line), i)) continue;

      std::vector<int> without = line;
      without.erase(without.begin() + i);
      int best_gap = -1;
      int best_dist = 0;
      for (int g = 0; g <= static_cast<int>(without.size()); ++g) {
        std::vector<int> candidate = without;
        candidate.insert(candidate.begin() + g, id);
        if (!line_content(cells_of(candidate), g)) continue;
        const int dist = std::abs(g - i);
        if (best_gap < 0 || dist < best_dist) {
          best_gap = g;
          best_dist = dist;
        }
      }
      if (best_gap >= 0) {
        without.insert(without.begin() + best_gap, id);
        line = std::move(without);
      }  // otherwise the agent stays where it was
    }
    snapshot.cells = cells_of(line);
    discontent = discontent_count(snapshot);
    trace.sweeps.push_back({s, discontent, seg_or_nan(snapshot)});
    trace.converged = discontent == 0;
  }

  trace.final_state = Line1D{cells_of(line)};
  return trace;
}

}  // namespace trisim::agents
