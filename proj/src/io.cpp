#include "trisim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <variant>

#include "trisim/errors.hpp"
#include "trisim/prng.hpp"

namespace trisim::io {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr char kPgmHeaderComment[] = "# 0 = dead (white), 9 = alive (black)\n";

char board_char(agents::Cell c) {
  switch (c) {
    case agents::Cell::A: return 'A';
    case agents::Cell::B: return 'B';
    default: return '.';
  }
}

}  // namespace

void write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp(target);
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed on '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move temporary file into place at '" + path + "'");
  }
}

std::string csv_nbody(const nbody::RunRecord& record) {
  std::string out = "t,a,e,E,H\n";
  for (const nbody::Sample& s : record.samples) {
    out += num(s.t) + "," + num(s.a) + "," + num(s.e) + "," + num(s.E_specific) + "," +
           num(s.H_specific) + "\n";
  }
  return out;
}

std::string csv_trace(const agents::SegregationTrace& trace) {
  std::string out = "sweep,discontent,seg_index\n";
  for (const agents::SweepSample& s : trace.sweeps) {
    out += std::to_string(s.sweep) + "," + std::to_string(s.discontent) + "," +
           num(s.seg_index) + "\n";
  }
  return out;
}

std::string csv_mc(const numerics::McEstimate& estimate) {
  return "mean,std_error,n\n" + num(estimate.mean) + "," + num(estimate.std_error) + "," +
         std::to_string(estimate.n) + "\n";
}

std::string text_rows(const std::vector<cellular::CaRow>& frames) {
  std::string out;
  for (size_t f = 0; f < frames.size(); ++f) {
    if (f > 0) out += '\n';
    for (const std::uint8_t cell : frames[f].cells) out += cell ? '#' : '.';
    out += '\n';
  }
  return out;
}

std::string text_grids(const std::vector<cellular::LifeGrid>& frames) {
  std::string out;
  for (size_t f = 0; f < frames.size(); ++f) {
    if (f > 0) out += '\n';
    const cellular::LifeGrid& g = frames[f];
    for (int r = 0; r < g.rows; ++r) {
      for (int c = 0; c < g.cols; ++c) out += g.at(r, c) ? '#' : '.';
      out += '\n';
    }
  }
  return out;
}

std::string text_board(const agents::Board& board) {
  std::string out;
  for (int r = 0; r < board.rows; ++r) {
    for (int c = 0; c < board.cols; ++c) out += board_char(board.at(r, c));
    out += '\n';
  }
  return out;
}

std::string text_line(const agents::Line1D& line) {
  std::string out;
  for (const agents::Cell c : line.cells) out += board_char(c);
  out += '\n';
  return out;
}

std::string pgm_rows(const std::vector<cellular::CaRow>& frames) {
  const int width = frames.empty() ? 0 : frames.front().width();
  std::string out = "P2\n";
  out += kPgmHeaderComment;
  out += std::to_string(width) + " " + std::to_string(frames.size()) + "\n9\n";
  for (const cellular::CaRow& row : frames) {
    for (int i = 0; i < row.width(); ++i) {
      if (i > 0) out += ' ';
      out += row.cells[i] ? '9' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string pgm_grid(const cellular::LifeGrid& grid) {
  std::string out = "P2\n";
  out += kPgmHeaderComment;
  out += std::to_string(grid.cols) + " " + std::to_string(grid.rows) + "\n9\n";
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (c > 0) out += ' ';
      out += grid.at(r, c) ? '9' : '0';
    }
    out += '\n';
  }
  return out;
}

namespace {

cellular::CaRow make_eca_seed(const config::EcaRun& run) {
  cellular::CaRow row;
  row.boundary = run.boundary;
  row.cells.assign(static_cast<size_t>(run.width), 0);
  if (run.init == config::EcaRun::Init::Single) {
    row.cells[static_cast<size_t>(run.width) / 2] = 1;
  } else {
    Prng rng(run.seed);
    for (auto& cell : row.cells) cell = rng.next_double() < run.density ? 1 : 0;
  }
  return row;
}

cellular::LifeGrid make_life_seed(const config::LifeRun& run) {
  cellular::LifeGrid grid(run.rows, run.cols, run.topology);
  if (run.init == config::LifeRun::Init::Glider) {
    // .#.
    // ..#
    // ###
    grid.at(0, 1) = 1;
    grid.at(1, 2) = 1;
    grid.at(2, 0) = 1;
    grid.at(2, 1) = 1;
    grid.at(2, 2) = 1;
  } else {
    Prng rng(run.seed);
    for (auto& cell : grid.cells) cell = rng.next_double() < run.density ? 1 : 0;
  }
  return grid;
}

double evaluate_integrand(config::McRun::Integrand kind, double x) {
  switch (kind) {
    case config::McRun::Integrand::QuarterCircle: return std::sqrt(1.0 - x * x);
    case config::McRun::Integrand::Identity: return x;
    default: return std::exp(x);
  }
}

struct Executor {
  std::vector<std::string> operator()(const config::NbodyRun& run) const {
    const nbody::RunRecord record = nbody::run(run.engine);
    const std::string path = run.out + ".csv";
    write_file(path, csv_nbody(record));
    return {path};
  }

  std::vector<std::string> operator()(const config::EcaRun& run) const {
    const cellular::EcaRule rule = cellular::EcaRule::from_number(run.rule);
    const std::vector<cellular::CaRow> frames = eca_run(make_eca_seed(run), rule, run.steps);
    const std::string txt = run.out + ".txt";
    const std::string pgm = run.out + ".pgm";
    write_file(txt, text_rows(frames));
    write_file(pgm, pgm_rows(frames));
    return {txt, pgm};
  }

  std::vector<std::string> operator()(const config::LifeRun& run) const {
    const std::vector<cellular::LifeGrid> frames = life_run(make_life_seed(run), run.steps);
    const std::string txt = run.out + ".txt";
    const std::string pgm = run.out + ".pgm";
    write_file(txt, text_grids(frames));
    write_file(pgm, pgm_grid(frames.back()));
    return {txt, pgm};
  }

  std::vector<std::string> operator()(const config::SchellingRun& run) const {
    const agents::SegregationTrace trace = agents::run_schelling(run.engine);
    const std::string csv = run.out + "_trace.csv";
    const std::string txt = run.out + "_final.txt";
    write_file(csv, csv_trace(trace));
    write_file(txt, text_board(std::get<agents::Board>(trace.final_state)));
    return {csv, txt};
  }

  std::vector<std::string> operator()(const config::Schelling1dRun& run) const {
    const agents::SegregationTrace trace = agents::run_schelling_1d(run.seed, run.max_sweeps);
    const std::string csv = run.out + "_trace.csv";
    const std::string txt = run.out + "_final.txt";
    write_file(csv, csv_trace(trace));
    write_file(txt, text_line(std::get<agents::Line1D>(trace.final_state)));
    return {csv, txt};
  }

  std::vector<std::string> operator()(const config::McRun& run) const {
    const auto f = [kind = run.integrand](double x) { return evaluate_integrand(kind, x); };
    const numerics::McEstimate estimate =
        numerics::monte_carlo_mean(f, run.a, run.b, run.n, run.seed);
    const std::string path = run.out + ".csv";
    write_file(path, csv_mc(estimate));
    return {path};
  }
};

}  // namespace

std::vector<std::string> execute_run(const config::RunConfig& config) {
  return std::visit(Executor{}, config);
}

}  // namespace trisim::io
