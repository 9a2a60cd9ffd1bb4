#include <doctest.h>

#include <algorithm>
#include <set>
#include <variant>
#include <vector>

#include "trisim/agents.hpp"
#include "trisim/errors.hpp"
#include "trisim/prng.hpp"

using trisim::DomainError;
using trisim::Prng;
using namespace trisim::agents;

namespace {

struct Counts {
  int a = 0;
  int b = 0;
  int empty = 0;
};

Counts count_cells(const Board& board) {
  Counts c;
  for (Cell cell : board.cells) {
    if (cell == Cell::A) ++c.a;
    else if (cell == Cell::B) ++c.b;
    else ++c.empty;
  }
  return c;
}

// Left block of A, right block of B, no vacancies.
Board two_block_board(int rows = 13, int cols = 16) {
  Board board(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      board.at(r, c) = c < cols / 2 ? Cell::A : Cell::B;
    }
  }
  return board;
}

Line1D make_line(const std::string& pattern) {
  Line1D line;
  for (char ch : pattern) line.cells.push_back(ch == 'A' ? Cell::A : Cell::B);
  return line;
}

std::set<int> discontent_set(const Board& board, double threshold) {
  std::set<int> out;
  for (int r = 0; r < board.rows; ++r) {
    for (int c = 0; c < board.cols; ++c) {
      if (board.at(r, c) == Cell::Empty) continue;
      if (!contentment(board, r, c, threshold)) out.insert(r * board.cols + c);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("initial boards hit the apportioned counts exactly") {
  SchellingConfig cfg;
  cfg.seed = 5;
  const Board board = init_board(cfg);
  REQUIRE(board.rows == 13);
  REQUIRE(board.cols == 16);
  const Counts c = count_cells(board);
  CHECK(c.a == 94);
  CHECK(c.b == 93);
  CHECK(c.empty == 21);
}

TEST_CASE("an all-empty fraction yields an all-empty board") {
  SchellingConfig cfg;
  cfg.frac_a = 0.0;
  cfg.frac_b = 0.0;
  cfg.frac_empty = 1.0;
  const Board board = init_board(cfg);
  CHECK(count_cells(board).empty == 208);
}

TEST_CASE("equal thirds split a three-cell board one apiece") {
  SchellingConfig cfg;
  cfg.rows = 3;
  cfg.cols = 1;
  cfg.frac_a = cfg.frac_b = cfg.frac_empty = 1.0 / 3.0;
  const Counts c = count_cells(init_board(cfg));
  CHECK(c.a == 1);
  CHECK(c.b == 1);
  CHECK(c.empty == 1);
}

TEST_CASE("remainder ties hand the extra cells to A then B") {
  SchellingConfig cfg;
  cfg.rows = 1;
  cfg.cols = 4;
  const Counts c = count_cells(init_board(cfg));  // exact shares 1.8 / 1.8 / 0.4
  CHECK(c.a == 2);
  CHECK(c.b == 2);
  CHECK(c.empty == 0);
}

TEST_CASE("board draws are seeded and distinct across seeds") {
  SchellingConfig one, two;
  one.seed = 1;
  two.seed = 2;
  CHECK(init_board(one) == init_board(one));
  CHECK(init_board(one) != init_board(two));
}

TEST_CASE("an agent with no occupied neighbours is content") {
  Board board(5, 5);
  board.at(2, 2) = Cell::A;
  CHECK(contentment(board, 2, 2, 0.99));
}

TEST_CASE("contentment of an empty cell is undefined") {
  Board board(3, 3);
  board.at(0, 0) = Cell::A;
  CHECK_THROWS_AS(contentment(board, 1, 1, 0.5), DomainError);
}

TEST_CASE("one like neighbour out of eight falls below a half threshold") {
  Board board(3, 3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) board.at(r, c) = Cell::B;
  }
  board.at(1, 1) = Cell::A;
  board.at(0, 0) = Cell::A;
  CHECK_FALSE(contentment(board, 1, 1, 0.5));
  CHECK(contentment(board, 1, 1, 0.125));
}

TEST_CASE("the threshold comparison is inclusive") {
  Board board(3, 3);
  board.at(1, 1) = Cell::A;
  board.at(0, 0) = board.at(0, 1) = Cell::A;
  board.at(2, 1) = board.at(2, 2) = Cell::B;
  CHECK(contentment(board, 1, 1, 0.5));  // exactly 2 of 4
  CHECK_FALSE(contentment(board, 1, 1, 0.51));
}

TEST_CASE("hypothetical placement judges a vacancy for a given type") {
  Board board(3, 3);
  board.at(0, 0) = Cell::B;
  CHECK_FALSE(would_be_content(board, 0, 1, Cell::A, 0.5));
  CHECK(would_be_content(board, 0, 1, Cell::B, 0.5));
  CHECK(would_be_content(board, 2, 2, Cell::A, 0.5));  // isolated corner
}

TEST_CASE("the discontent count matches a manual scan") {
  SchellingConfig cfg;
  cfg.seed = 17;
  const Board board = init_board(cfg);
  CHECK(discontent_count(board, cfg.threshold) ==
        static_cast<int>(discontent_set(board, cfg.threshold).size()));
}

TEST_CASE("a zero-discontent board is a sweep fixed point") {
  const Board board = two_block_board();
  SchellingConfig cfg;
  CHECK(discontent_count(board, cfg.threshold) == 0);
  Prng rng(123);
  const SweepResult result = sweep(board, cfg, rng);
  CHECK(result.moved == 0);
  CHECK(result.board == board);
}

TEST_CASE("a lone discontent agent takes the nearest satisfying vacancy") {
  // A at (0,0) is outnumbered; (0,3) and (3,0) are the nearest vacancies
  // with no occupied neighbours, and the row-major tie goes to (0,3).
  Board board(4, 4);
  board.at(0, 0) = Cell::A;
  board.at(0, 1) = Cell::B;
  board.at(1, 0) = Cell::B;
  board.at(1, 1) = Cell::B;
  SchellingConfig cfg;
  cfg.rows = cfg.cols = 4;
  Prng rng(7);
  const SweepResult result = sweep(board, cfg, rng);
  CHECK(result.moved == 1);
  CHECK(result.board.at(0, 0) == Cell::Empty);
  CHECK(result.board.at(0, 3) == Cell::A);
  CHECK(discontent_count(result.board, cfg.threshold) == 0);
}

TEST_CASE("sweeps conserve the cell counts") {
  SchellingConfig cfg;
  cfg.seed = 11;
  Board board = init_board(cfg);
  const Counts before = count_cells(board);
  Prng rng(cfg.seed);
  for (int s = 0; s < 10; ++s) {
    const SweepResult result = sweep(board, cfg, rng);
    const Counts after = count_cells(result.board);
    CHECK(after.a == before.a);
    CHECK(after.b == before.b);
    CHECK(after.empty == before.empty);
    board = result.board;
  }
}

TEST_CASE("the random-vacancy rule still vacates the mover's cell") {
  Board board(4, 4);
  board.at(0, 0) = Cell::A;
  board.at(0, 1) = Cell::B;
  board.at(1, 0) = Cell::B;
  board.at(1, 1) = Cell::B;
  SchellingConfig cfg;
  cfg.rows = cfg.cols = 4;
  cfg.move_rule = MoveRule::RandomVacancy;
  Prng rng(3);
  const SweepResult result = sweep(board, cfg, rng);
  CHECK(result.moved == 1);
  CHECK(result.board.at(0, 0) == Cell::Empty);
  const Counts c = count_cells(result.board);
  CHECK(c.a == 1);
  CHECK(c.b == 3);
}

TEST_CASE("segregation index of uniform and patterned boards") {
  Board packed(5, 5);
  for (Cell& c : packed.cells) c = Cell::A;
  CHECK(segregation_index(packed) == 1.0);

  Board checker(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) checker.at(r, c) = (r + c) % 2 ? Cell::B : Cell::A;
  }
  CHECK(segregation_index(checker) == doctest::Approx(49.0 / 120.0).epsilon(1e-12));

  CHECK(segregation_index(two_block_board()) ==
        doctest::Approx(0.9526442307692307).epsilon(1e-12));
}

TEST_CASE("the segregation index needs at least one adjacent pair") {
  Board board(4, 4);
  CHECK_THROWS_AS(segregation_index(board), DomainError);
  board.at(0, 0) = Cell::A;
  CHECK_THROWS_AS(segregation_index(board), DomainError);
}

TEST_CASE("a single-type population converges at sweep zero") {
  SchellingConfig cfg;
  cfg.frac_a = 0.9;
  cfg.frac_b = 0.0;
  cfg.frac_empty = 0.1;
  cfg.seed = 4;
  const SegregationTrace trace = run_schelling(cfg);
  REQUIRE(trace.sweeps.size() == 1);
  CHECK(trace.sweeps[0].discontent == 0);
  CHECK(trace.converged);
}

TEST_CASE("mixed boards segregate and converge") {
  SchellingConfig cfg;
  cfg.seed = 3;
  const SegregationTrace trace = run_schelling(cfg);
  REQUIRE(trace.sweeps.size() >= 2);
  CHECK(trace.converged);
  CHECK(trace.sweeps.back().discontent == 0);
  CHECK(trace.sweeps.back().seg_index > trace.sweeps.front().seg_index);
}

TEST_CASE("zero max sweeps measures the start and stops") {
  SchellingConfig cfg;
  cfg.seed = 3;
  cfg.max_sweeps = 0;
  const SegregationTrace trace = run_schelling(cfg);
  REQUIRE(trace.sweeps.size() == 1);
  CHECK(trace.sweeps[0].sweep == 0);
  CHECK(trace.sweeps[0].discontent > 0);
  CHECK_FALSE(trace.converged);
}

TEST_CASE("a converged board is a fixed point for any later seed") {
  SchellingConfig cfg;
  cfg.seed = 7;
  const SegregationTrace trace = run_schelling(cfg);
  REQUIRE(trace.converged);
  const Board final_board = std::get<Board>(trace.final_state);
  for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) {
    Prng rng(s);
    const SweepResult result = sweep(final_board, cfg, rng);
    CHECK(result.moved == 0);
    CHECK(result.board == final_board);
  }
}

TEST_CASE("runs are bit-for-bit deterministic") {
  SchellingConfig cfg;
  cfg.seed = 9;
  const SegregationTrace a = run_schelling(cfg);
  const SegregationTrace b = run_schelling(cfg);
  REQUIRE(a.sweeps.size() == b.sweeps.size());
  for (size_t i = 0; i < a.sweeps.size(); ++i) {
    CHECK(a.sweeps[i].discontent == b.sweeps[i].discontent);
    CHECK(a.sweeps[i].seg_index == b.sweeps[i].seg_index);
  }
  CHECK(std::get<Board>(a.final_state) == std::get<Board>(b.final_state));
}

TEST_CASE("raising the threshold only grows the discontent set") {
  SchellingConfig cfg;
  cfg.seed = 13;
  const Board board = init_board(cfg);
  const std::set<int> low = discontent_set(board, 0.3);
  const std::set<int> mid = discontent_set(board, 0.5);
  const std::set<int> high = discontent_set(board, 0.7);
  CHECK(std::includes(mid.begin(), mid.end(), low.begin(), low.end()));
  CHECK(std::includes(high.begin(), high.end(), mid.begin(), mid.end()));
  CHECK(low.size() < high.size());
}

TEST_CASE("the final trace entry is calm exactly when the run converged") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    SchellingConfig cfg;
    cfg.seed = seed;
    const SegregationTrace trace = run_schelling(cfg);
    CHECK((trace.sweeps.back().discontent == 0) == trace.converged);
  }
}

TEST_CASE("a strictly alternating line upsets only the near-end agents") {
  std::string pattern;
  for (int i = 0; i < 70; ++i) pattern += (i % 2 ? 'B' : 'A');
  const Line1D line = make_line(pattern);
  // Interior agents see four of eight like neighbours, which is not a
  // minority; truncation only breaks the balance one step in from each end.
  CHECK(discontent_count(line) == 4);
  CHECK(segregation_index(line) == doctest::Approx(0.4951020408163266).epsilon(1e-12));
}

TEST_CASE("a fully sorted line is content and highly segregated") {
  const Line1D line = make_line(std::string(35, 'A') + std::string(35, 'B'));
  CHECK(discontent_count(line) == 0);
  CHECK(segregation_index(line) == doctest::Approx(0.9642857142857143).epsilon(1e-12));
}

TEST_CASE("a single-type line scores a segregation index of one") {
  const Line1D line = make_line(std::string(70, 'A'));
  CHECK(segregation_index(line) == 1.0);
}

TEST_CASE("the line model sorts itself out and stays sorted") {
  const SegregationTrace trace = run_schelling_1d(5, 100);
  REQUIRE(!trace.sweeps.empty());
  CHECK(trace.converged);
  CHECK(trace.sweeps.back().discontent == 0);
  CHECK(trace.sweeps.back().seg_index >= trace.sweeps.front().seg_index);
  const Line1D final_line = std::get<Line1D>(trace.final_state);
  REQUIRE(final_line.cells.size() == 70);
  const int a_count = static_cast<int>(
      std::count(final_line.cells.begin(), final_line.cells.end(), Cell::A));
  CHECK(a_count == 35);

  const SegregationTrace again = run_schelling_1d(5, 100);
  CHECK(std::get<Line1D>(again.final_state) == final_line);
  CHECK(again.sweeps.size() == trace.sweeps.size());
}
