#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "trisim/config.hpp"
#include "trisim/errors.hpp"
#include "trisim/io.hpp"
#include "trisim/nbody.hpp"
#include "trisim/realism.hpp"

using trisim::ConfigError;
using trisim::IoError;
using namespace trisim::config;
using namespace trisim::io;
using namespace trisim::realism;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("trisim-test-" + std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string error_text(const std::string& config_text) {
  try {
    parse_config(config_text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Splits "a,b,c\n..." into cells for format checks.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(ec == std::errc{});
  REQUIRE(ptr == s.data() + s.size());
  return v;
}

}  // namespace

TEST_CASE("a bare kind line yields the reference defaults") {
  const RunConfig cfg = parse_config("kind = nbody\n");
  const auto* run = std::get_if<NbodyRun>(&cfg);
  REQUIRE(run != nullptr);
  CHECK(run->engine == trisim::nbody::NBodyConfig{});
  CHECK(run->bounds == MassBounds{});
  CHECK(run->out == "out");
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const std::string text =
      "# integrator run\n"
      "\n"
      "kind = nbody   # selects the model\n"
      "   dt0=2.5\n"
      "t_total = 0 # nothing to do\n";
  const auto& run = std::get<NbodyRun>(parse_config(text));
  CHECK(run.engine.dt0 == 2.5);
  CHECK(run.engine.t_total == 0.0);
}

TEST_CASE("every run kind survives a print/parse round trip") {
  std::vector<RunConfig> cases;

  NbodyRun nb;
  nb.engine.G = 6.7e-11;
  nb.engine.planet_mass = 5.5e26;
  nb.engine.satellite_mass = 1e21;
  nb.engine.dt0 = 2.0;
  nb.engine.t_total = 4321.0;
  nb.engine.origin_body = 2;
  nb.engine.tolerance = 12.5;
  nb.engine.d0 = 2e8;
  nb.engine.spring.k = 1e17;
  nb.engine.spring.l0 = 5e5;
  nb.engine.spring.c = 3.25e19;
  nb.engine.e0 = 0.25;
  nb.engine.record_every = 7;
  nb.engine.seed = 99;
  nb.bounds.planet_mass_min = 1e25;
  nb.bounds.satellite_mass_max = 1e22;
  nb.out = "orbit";
  cases.emplace_back(nb);

  EcaRun eca;
  eca.rule = 110;
  eca.width = 63;
  eca.steps = 31;
  eca.boundary = trisim::cellular::Boundary::Wrap;
  eca.init = EcaRun::Init::Random;
  eca.density = 0.3;
  eca.seed = 8;
  eca.out = "strip";
  cases.emplace_back(eca);

  LifeRun life;
  life.rows = 24;
  life.cols = 40;
  life.steps = 12;
  life.topology = trisim::cellular::Topology::DeadBorder;
  life.init = LifeRun::Init::Glider;
  life.density = 0.8;
  life.seed = 3;
  life.out = "grid";
  cases.emplace_back(life);

  SchellingRun sch;
  sch.engine.rows = 20;
  sch.engine.cols = 20;
  sch.engine.frac_a = 0.4;
  sch.engine.frac_b = 0.4;
  sch.engine.frac_empty = 0.2;
  sch.engine.threshold = 0.625;
  sch.engine.max_sweeps = 55;
  sch.engine.move_rule = trisim::agents::MoveRule::RandomVacancy;
  sch.engine.seed = 14;
  sch.out = "city";
  cases.emplace_back(sch);

  Schelling1dRun line;
  line.max_sweeps = 42;
  line.seed = 77;
  line.out = "street";
  cases.emplace_back(line);

  McRun mc;
  mc.integrand = McRun::Integrand::Exp;
  mc.a = -1.0;
  mc.b = 1.5;
  mc.n = 4096;
  mc.seed = 31;
  mc.out = "area";
  cases.emplace_back(mc);

  for (const RunConfig& original : cases) {
    CHECK(parse_config(print_config(original)) == original);
  }
}

TEST_CASE("body numbering in files is one-based") {
  const auto& run = std::get<NbodyRun>(parse_config("kind = nbody\norigin_body = 1\n"));
  CHECK(run.engine.origin_body == 0);
  NbodyRun echo;
  echo.engine.origin_body = 3;
  CHECK(contains(print_config(RunConfig{echo}), "origin_body = 4"));
}

TEST_CASE("parse errors carry the line number and key") {
  CHECK(contains(error_text(""), "kind"));
  CHECK(contains(error_text("dt0 = 1\n"), "kind"));
  CHECK(contains(error_text("kind = warp\n"), "unknown kind 'warp'"));

  const std::string typo = error_text("kind = nbody\ntolernace = 5\n");
  CHECK(contains(typo, "line 2"));
  CHECK(contains(typo, "tolernace"));
  CHECK(contains(typo, "nbody"));

  const std::string dup = error_text("kind = mc\nn = 10\nn = 20\n");
  CHECK(contains(dup, "line 3"));
  CHECK(contains(dup, "duplicate"));

  const std::string shapeless = error_text("kind = eca\njust some words\n");
  CHECK(contains(shapeless, "line 2"));

  const std::string badnum = error_text("kind = nbody\ndt0 = fast\n");
  CHECK(contains(badnum, "line 2"));
  CHECK(contains(badnum, "dt0"));
  CHECK(contains(badnum, "fast"));

  const std::string missing = error_text("kind = eca\nrule =\n");
  CHECK(contains(missing, "line 2"));
}

TEST_CASE("out-of-range values name the offending key") {
  CHECK(contains(error_text("kind = eca\nrule = 256\n"), "rule"));
  CHECK(contains(error_text("kind = eca\nwidth = 0\n"), "width"));
  CHECK(contains(error_text("kind = eca\ndensity = 1.5\n"), "density"));
  CHECK(contains(error_text("kind = eca\nboundary = open\n"), "boundary"));
  CHECK(contains(error_text("kind = life\nrows = 0\n"), "rows"));
  CHECK(contains(error_text("kind = life\nrows = 2\ncols = 2\ninit = glider\n"), "glider"));
  CHECK(contains(error_text("kind = schelling\nthreshold = -0.1\n"), "threshold"));
  CHECK(contains(error_text("kind = schelling\nmove_rule = teleport\n"), "move_rule"));
  CHECK(contains(error_text("kind = schelling1d\nmax_sweeps = -1\n"), "max_sweeps"));
  CHECK(contains(error_text("kind = mc\nn = 1\n"), "n"));
  CHECK(contains(error_text("kind = mc\na = 2\nb = 1\n"), "b"));
  CHECK(contains(error_text("kind = nbody\norigin_body = 0\n"), "origin_body"));
  CHECK(contains(error_text("kind = nbody\norigin_body = 5\n"), "origin_body"));
}

TEST_CASE("seed and output prefix overrides reach every kind") {
  for (const char* kind : {"nbody", "eca", "life", "schelling", "schelling1d", "mc"}) {
    RunConfig cfg = parse_config(std::string("kind = ") + kind + "\n");
    set_seed(cfg, 321);
    set_out(cfg, "override");
    CHECK(out_prefix(cfg) == "override");
    CHECK(contains(print_config(cfg), "seed = 321"));
  }
}

TEST_CASE("the reference configuration is classified as empirical") {
  const auto run = std::get<NbodyRun>(parse_config("kind = nbody\n"));
  const RealismReport report = realism_guard(run);
  CHECK(report.warnings.empty());
  CHECK(report.classification() == "empirical");
  CHECK(contains(format_report(report), "classification: empirical"));
}

TEST_CASE("a fantasy gravitational constant draws exactly one warning") {
  const auto run = std::get<NbodyRun>(parse_config("kind = nbody\nG = 2\n"));
  const RealismReport report = realism_guard(run);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].key == "G");
  CHECK(report.classification() == "imaginary");
  const std::string text = format_report(report);
  CHECK(contains(text, "6.67384e-11"));
  CHECK(contains(text, "classification: imaginary"));
}

TEST_CASE("tiny drift in G stays under the relative gate") {
  const auto run =
      std::get<NbodyRun>(parse_config("kind = nbody\nG = 6.673840001e-11\n"));
  CHECK(realism_guard(run).warnings.empty());
}

TEST_CASE("a satellite outweighing its planet is flagged") {
  const auto run = std::get<NbodyRun>(
      parse_config("kind = nbody\nplanet_mass = 2e27\nsatellite_mass = 3e30\n"));
  const RealismReport report = realism_guard(run);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.classification() == "imaginary");
}

TEST_CASE("mass bounds are checked only when configured") {
  auto run = std::get<NbodyRun>(parse_config("kind = nbody\n"));
  CHECK(realism_guard(run).warnings.empty());
  run.bounds.planet_mass_min = 1e28;  // reference planet sits below this
  CHECK(realism_guard(run).warnings.size() == 1);
  run.bounds.planet_mass_min = 1e25;
  run.bounds.satellite_mass_max = 1e21;  // and the satellite above this
  CHECK(realism_guard(run).warnings.size() == 1);
  run.bounds.satellite_mass_max = 1e23;
  CHECK(realism_guard(run).warnings.empty());
}

TEST_CASE("independent warnings accumulate") {
  const auto run = std::get<NbodyRun>(
      parse_config("kind = nbody\nG = 2\nplanet_mass = 1e20\nsatellite_mass = 3e22\n"));
  const RealismReport report = realism_guard(run);
  CHECK(report.warnings.size() == 2);
  CHECK(report.classification() == "imaginary");
}

TEST_CASE("orbit runs serialize as a five-column table") {
  trisim::nbody::NBodyConfig cfg;
  cfg.t_total = 0.0;
  const auto rows = parse_csv(csv_nbody(trisim::nbody::run(cfg)));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"t", "a", "e", "E", "H"});
  REQUIRE(rows[1].size() == 5);
  CHECK(parse_double(rows[1][0]) == 0.0);
  CHECK(parse_double(rows[1][1]) == doctest::Approx(6.25e7).epsilon(1e-9));
}

TEST_CASE("serialized floating-point survives a text round trip unchanged") {
  trisim::nbody::NBodyConfig cfg;
  cfg.t_total = 0.0;
  const trisim::nbody::RunRecord rec = trisim::nbody::run(cfg);
  const auto rows = parse_csv(csv_nbody(rec));
  CHECK(parse_double(rows[1][1]) == rec.samples[0].a);
  CHECK(parse_double(rows[1][2]) == rec.samples[0].e);
  CHECK(parse_double(rows[1][3]) == rec.samples[0].E_specific);
  CHECK(parse_double(rows[1][4]) == rec.samples[0].H_specific);
}

TEST_CASE("monte carlo estimates serialize as one data row") {
  const trisim::numerics::McEstimate est{0.78, 0.0004, 1000};
  const auto rows = parse_csv(csv_mc(est));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"mean", "std_error", "n"});
  CHECK(parse_double(rows[1][0]) == 0.78);
  CHECK(rows[1][2] == "1000");
}

TEST_CASE("cell rows render as dot-hash frames separated by blank lines") {
  using trisim::cellular::CaRow;
  CaRow a;
  a.cells = {1, 0, 1};
  CaRow b;
  b.cells = {0, 1, 0};
  CHECK(text_rows({a, b}) == "#.#\n\n.#.\n");
  CHECK(text_rows({a}) == "#.#\n");
}

TEST_CASE("space-time strips become portable graymaps with a legend") {
  using trisim::cellular::CaRow;
  CaRow a;
  a.cells = {1, 0, 1};
  CaRow b;
  b.cells = {0, 1, 0};
  CHECK(pgm_rows({a, b}) ==
        "P2\n"
        "# 0 = dead (white), 9 = alive (black)\n"
        "3 2\n9\n"
        "9 0 9\n"
        "0 9 0\n");
}

TEST_CASE("life grids serialize with the final frame as the image") {
  trisim::cellular::LifeGrid g(2, 3, trisim::cellular::Topology::Torus);
  g.at(0, 0) = 1;
  g.at(1, 2) = 1;
  CHECK(text_grids({g}) == "#..\n..#\n");
  CHECK(pgm_grid(g) ==
        "P2\n"
        "# 0 = dead (white), 9 = alive (black)\n"
        "3 2\n9\n"
        "9 0 0\n"
        "0 0 9\n");
}

TEST_CASE("boards and lines use letters for agents and dots for gaps") {
  trisim::agents::Board board(2, 2);
  board.at(0, 0) = trisim::agents::Cell::A;
  board.at(1, 1) = trisim::agents::Cell::B;
  CHECK(text_board(board) == "A.\n.B\n");

  trisim::agents::Line1D line;
  line.cells = {trisim::agents::Cell::A, trisim::agents::Cell::B, trisim::agents::Cell::A};
  CHECK(text_line(line) == "ABA\n");
}

TEST_CASE("files are written atomically and read back verbatim") {
  TempDir dir;
  const std::string path = dir.file("data.txt");
  write_file(path, "line one\nline two\n");
  CHECK(slurp(path) == "line one\nline two\n");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  write_file(path, "replaced\n");
  CHECK(slurp(path) == "replaced\n");
}

TEST_CASE("unwritable destinations raise an io error naming the path") {
  try {
    write_file("/nonexistent-dir/deeper/out.txt", "x");
    CHECK_MESSAGE(false, "expected a write failure");
  } catch (const IoError& e) {
    CHECK(contains(e.what(), "/nonexistent-dir/deeper/out.txt"));
  }
}

TEST_CASE("executing a cellular run writes both text and image files") {
  TempDir dir;
  RunConfig cfg = parse_config("kind = eca\nrule = 204\nwidth = 3\nsteps = 1\n");
  set_out(cfg, dir.file("strip"));
  const std::vector<std::string> written = execute_run(cfg);
  REQUIRE(written.size() == 2);
  CHECK(slurp(dir.file("strip.txt")) == ".#.\n\n.#.\n");
  CHECK(slurp(dir.file("strip.pgm")) ==
        "P2\n"
        "# 0 = dead (white), 9 = alive (black)\n"
        "3 2\n9\n"
        "0 9 0\n"
        "0 9 0\n");
}

TEST_CASE("the documented image size is width by steps plus one") {
  TempDir dir;
  RunConfig cfg = parse_config("kind = eca\nrule = 30\nwidth = 63\nsteps = 31\n");
  set_out(cfg, dir.file("rule30"));
  execute_run(cfg);
  const std::string pgm = slurp(dir.file("rule30.pgm"));
  CHECK(contains(pgm, "\n63 32\n"));
}

TEST_CASE("repeated execution is byte-identical") {
  TempDir dir;
  for (const char* text : {"kind = eca\nrule = 110\nwidth = 32\nsteps = 16\ninit = random\n",
                           "kind = life\nrows = 12\ncols = 12\nsteps = 8\n",
                           "kind = schelling\nmax_sweeps = 20\n",
                           "kind = schelling1d\nmax_sweeps = 20\n",
                           "kind = mc\nn = 5000\n"}) {
    RunConfig cfg = parse_config(text);
    set_out(cfg, dir.file("a"));
    const std::vector<std::string> first = execute_run(cfg);
    std::vector<std::string> snapshots;
    for (const std::string& p : first) snapshots.push_back(slurp(p));
    set_out(cfg, dir.file("b"));
    const std::vector<std::string> second = execute_run(cfg);
    REQUIRE(first.size() == second.size());
    for (size_t i = 0; i < second.size(); ++i) {
      CHECK(slurp(second[i]) == snapshots[i]);
    }
  }
}

TEST_CASE("schelling runs produce a trace and a final board") {
  TempDir dir;
  RunConfig cfg = parse_config("kind = schelling\nseed = 6\n");
  set_out(cfg, dir.file("city"));
  execute_run(cfg);
  const auto rows = parse_csv(slurp(dir.file("city_trace.csv")));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"sweep", "discontent", "seg_index"});
  const std::string board = slurp(dir.file("city_final.txt"));
  CHECK(std::count(board.begin(), board.end(), '\n') == 13);
  CHECK(std::count(board.begin(), board.end(), 'A') == 94);
  CHECK(std::count(board.begin(), board.end(), 'B') == 93);
}
