#include "trisim/config.hpp"

#include <charconv>
#include <cstdio>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string_view>
#include <utility>

#include "trisim/errors.hpp"

namespace trisim::config {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Raw {
  std::string value;
  int line = 0;
  bool used = false;
};

using RawMap = std::map<std::string, Raw>;

RawMap tokenize(const std::string& text) {
  RawMap map;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": missing key before '='");
    if (value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key + "': missing value");
    if (map.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    map[key] = Raw{value, lineno};
  }
  return map;
}

template <typename T>
bool from_text(const std::string& s, T& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

class Reader {
 public:
  Reader(RawMap& map, std::string kind) : map_(map), kind_(std::move(kind)) {}

  void read(const char* key, double& v) { read_number(key, v, "a number"); }
  void read(const char* key, int& v) { read_number(key, v, "an integer"); }
  void read(const char* key, long long& v) { read_number(key, v, "an integer"); }
  void read(const char* key, std::uint64_t& v) {
    read_number(key, v, "a non-negative integer");
  }

  void read(const char* key, std::optional<double>& v) {
    Raw* raw = find(key);
    if (!raw) return;
    double value = 0.0;
    if (!from_text(raw->value, value)) fail(*raw, key, "expected a number");
    v = value;
  }

  void read(const char* key, std::string& v) {
    if (Raw* raw = find(key)) v = raw->value;
  }

  template <typename E>
  void read_enum(const char* key, E& v,
                 std::initializer_list<std::pair<const char*, E>> values) {
    Raw* raw = find(key);
    if (!raw) return;
    std::string allowed;
    for (const auto& [name, value] : values) {
      if (raw->value == name) {
        v = value;
        return;
      }
      if (!allowed.empty()) allowed += '|';
      allowed += name;
    }
    fail(*raw, key, "expected one of " + allowed + ", got '" + raw->value + "'");
  }

  // Range check for a value the engine layer does not own; quotes the
  // config line when the key was given explicitly.
  void check(bool ok, const char* key, const char* msg) {
    if (ok) return;
    if (const auto it = map_.find(key); it != map_.end()) fail(it->second, key, msg);
    throw ConfigError(std::string("key '") + key + "': " + msg);
  }

  void finish() {
    const Raw* worst = nullptr;
    const std::string* worst_key = nullptr;
    for (const auto& [key, raw] : map_) {
      if (raw.used) continue;
      if (!worst || raw.line < worst->line) {
        worst = &raw;
        worst_key = &key;
      }
    }
    if (worst)
      throw ConfigError("line " + std::to_string(worst->line) + ": unknown key '" + *worst_key +
                        "' for kind '" + kind_ + "'");
  }

 private:
  Raw* find(const char* key) {
    const auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  template <typename T>
  void read_number(const char* key, T& v, const char* what) {
    Raw* raw = find(key);
    if (!raw) return;
    if (!from_text(raw->value, v))
      fail(*raw, key, std::string("expected ") + what + ", got '" + raw->value + "'");
  }

  [[noreturn]] void fail(const Raw& raw, const std::string& key, const std::string& msg) {
    throw ConfigError("line " + std::to_string(raw.line) + ": key '" + key + "': " + msg);
  }

  RawMap& map_;
  std::string kind_;
};

NbodyRun build_nbody(Reader& r) {
  NbodyRun run;
  nbody::NBodyConfig& e = run.engine;
  r.read("G", e.G);
  r.read("planet_mass", e.planet_mass);
  r.read("satellite_mass", e.satellite_mass);
  r.read("dt0", e.dt0);
  r.read("t_total", e.t_total);
  int origin = e.origin_body + 1;  // the file uses 1-based body numbering
  r.read("origin_body", origin);
  r.check(origin >= 1 && origin <= 4, "origin_body", "must be 1..4");
  e.origin_body = origin - 1;
  r.read("tolerance", e.tolerance);
  r.read("d0", e.d0);
  r.read("l0", e.spring.l0);
  r.read("e0", e.e0);
  r.read("k", e.spring.k);
  r.read("c", e.spring.c);
  r.read("record_every", e.record_every);
  r.read("seed", e.seed);
  r.read("planet_mass_min", run.bounds.planet_mass_min);
  r.read("planet_mass_max", run.bounds.planet_mass_max);
  r.read("satellite_mass_min", run.bounds.satellite_mass_min);
  r.read("satellite_mass_max", run.bounds.satellite_mass_max);
  r.read("out", run.out);
  return run;
}

EcaRun build_eca(Reader& r) {
  EcaRun run;
  r.read("rule", run.rule);
  r.check(run.rule >= 0 && run.rule <= 255, "rule", "must be 0..255");
  r.read("width", run.width);
  r.check(run.width >= 1, "width", "must be at least 1");
  r.read("steps", run.steps);
  r.check(run.steps >= 0, "steps", "must be non-negative");
  r.read_enum("boundary", run.boundary,
              {{"zero", cellular::Boundary::Zero}, {"wrap", cellular::Boundary::Wrap}});
  r.read_enum("init", run.init, {{"single", EcaRun::Init::Single}, {"random", EcaRun::Init::Random}});
  r.read("density", run.density);
  r.check(run.density >= 0.0 && run.density <= 1.0, "density", "must lie in [0, 1]");
  r.read("seed", run.seed);
  r.read("out", run.out);
  return run;
}

LifeRun build_life(Reader& r) {
  LifeRun run;
  r.read("rows", run.rows);
  r.read("cols", run.cols);
  r.check(run.rows >= 1, "rows", "must be at least 1");
  r.check(run.cols >= 1, "cols", "must be at least 1");
  r.read("steps", run.steps);
  r.check(run.steps >= 0, "steps", "must be non-negative");
  r.read_enum("topology", run.topology,
              {{"torus", cellular::Topology::Torus}, {"dead", cellular::Topology::DeadBorder}});
  r.read_enum("init", run.init,
              {{"random", LifeRun::Init::Random}, {"glider", LifeRun::Init::Glider}});
  r.check(run.init != LifeRun::Init::Glider || (run.rows >= 3 && run.cols >= 3), "init",
          "glider needs a grid of at least 3x3");
  r.read("density", run.density);
  r.check(run.density >= 0.0 && run.density <= 1.0, "density", "must lie in [0, 1]");
  r.read("seed", run.seed);
  r.read("out", run.out);
  return run;
}

SchellingRun build_schelling(Reader& r) {
  SchellingRun run;
  agents::SchellingConfig& e = run.engine;
  r.read("rows", e.rows);
  r.read("cols", e.cols);
  r.check(e.rows >= 1, "rows", "must be at least 1");
  r.check(e.cols >= 1, "cols", "must be at least 1");
  r.read("frac_a", e.frac_a);
  r.read("frac_b", e.frac_b);
  r.read("frac_empty", e.frac_empty);
  r.read("threshold", e.threshold);
  r.check(e.threshold >= 0.0 && e.threshold <= 1.0, "threshold", "must lie in [0, 1]");
  r.read("max_sweeps", e.max_sweeps);
  r.check(e.max_sweeps >= 0, "max_sweeps", "must be non-negative");
  r.read_enum("move_rule", e.move_rule,
              {{"random-vacancy", agents::MoveRule::RandomVacancy},
               {"nearest-satisfying-vacancy", agents::MoveRule::NearestSatisfyingVacancy}});
  r.read("seed", e.seed);
  r.read("out", run.out);
  return run;
}

Schelling1dRun build_schelling1d(Reader& r) {
  Schelling1dRun run;
  r.read("max_sweeps", run.max_sweeps);
  r.check(run.max_sweeps >= 0, "max_sweeps", "must be non-negative");
  r.read("seed", run.seed);
  r.read("out", run.out);
  return run;
}

McRun build_mc(Reader& r) {
  McRun run;
  r.read_enum("integrand", run.integrand,
              {{"quarter_circle", McRun::Integrand::QuarterCircle},
               {"identity", McRun::Integrand::Identity},
               {"exp", McRun::Integrand::Exp}});
  r.read("a", run.a);
  r.read("b", run.b);
  r.check(run.b > run.a, "b", "integration interval needs b > a");
  r.read("n", run.n);
  r.check(run.n >= 2, "n", "must be at least 2");
  r.read("seed", run.seed);
  r.read("out", run.out);
  return run;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Printer {
 public:
  void put(const char* key, const std::string& v) { out_ += std::string(key) + " = " + v + "\n"; }
  void put(const char* key, double v) { put(key, num(v)); }
  void put(const char* key, int v) { put(key, std::to_string(v)); }
  void put(const char* key, long long v) { put(key, std::to_string(v)); }
  void put(const char* key, std::uint64_t v) { put(key, std::to_string(v)); }
  void put(const char* key, const std::optional<double>& v) {
    if (v) put(key, *v);
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RawMap map = tokenize(text);
  const auto kind_it = map.find("kind");
  if (kind_it == map.end()) throw ConfigError("missing required key 'kind'");
  kind_it->second.used = true;
  const std::string& kind = kind_it->second.value;

  Reader reader(map, kind);
  RunConfig result;
  if (kind == "nbody")
    result = build_nbody(reader);
  else if (kind == "eca")
    result = build_eca(reader);
  else if (kind == "life")
    result = build_life(reader);
  else if (kind == "schelling")
    result = build_schelling(reader);
  else if (kind == "schelling1d")
    result = build_schelling1d(reader);
  else if (kind == "mc")
    result = build_mc(reader);
  else
    throw ConfigError("line " + std::to_string(kind_it->second.line) + ": key 'kind': unknown kind '" +
                      kind + "'");
  reader.finish();
  return result;
}

std::string print_config(const RunConfig& config) {
  Printer p;
  if (const auto* run = std::get_if<NbodyRun>(&config)) {
    const nbody::NBodyConfig& e = run->engine;
    p.put("kind", "nbody");
    p.put("G", e.G);
    p.put("planet_mass", e.planet_mass);
    p.put("satellite_mass", e.satellite_mass);
    p.put("dt0", e.dt0);
    p.put("t_total", e.t_total);
    p.put("origin_body", e.origin_body + 1);
    p.put("tolerance", e.tolerance);
    p.put("d0", e.d0);
    p.put("l0", e.spring.l0);
    p.put("e0", e.e0);
    p.put("k", e.spring.k);
    p.put("c", e.spring.c);
    p.put("record_every", e.record_every);
    p.put("seed", e.seed);
    p.put("planet_mass_min", run->bounds.planet_mass_min);
    p.put("planet_mass_max", run->bounds.planet_mass_max);
    p.put("satellite_mass_min", run->bounds.satellite_mass_min);
    p.put("satellite_mass_max", run->bounds.satellite_mass_max);
    p.put("out", run->out);
  } else if (const auto* run = std::get_if<EcaRun>(&config)) {
    p.put("kind", "eca");
    p.put("rule", run->rule);
    p.put("width", run->width);
    p.put("steps", run->steps);
    p.put("boundary", run->boundary == cellular::Boundary::Zero ? "zero" : "wrap");
    p.put("init", run->init == EcaRun::Init::Single ? "single" : "random");
    p.put("density", run->density);
    p.put("seed", run->seed);
    p.put("out", run->out);
  } else if (const auto* run = std::get_if<LifeRun>(&config)) {
    p.put("kind", "life");
    p.put("rows", run->rows);
    p.put("cols", run->cols);
    p.put("steps", run->steps);
    p.put("topology", run->topology == cellular::Topology::Torus ? "torus" : "dead");
    p.put("init", run->init == LifeRun::Init::Random ? "random" : "glider");
    p.put("density", run->density);
    p.put("seed", run->seed);
    p.put("out", run->out);
  } else if (const auto* run = std::get_if<SchellingRun>(&config)) {
    const agents::SchellingConfig& e = run->engine;
    p.put("kind", "schelling");
    p.put("rows", e.rows);
    p.put("cols", e.cols);
    p.put("frac_a", e.frac_a);
    p.put("frac_b", e.frac_b);
    p.put("frac_empty", e.frac_empty);
    p.put("threshold", e.threshold);
    p.put("max_sweeps", e.max_sweeps);
    p.put("move_rule", e.move_rule == agents::MoveRule::RandomVacancy
                           ? "random-vacancy"
                           : "nearest-satisfying-vacancy");
    p.put("seed", e.seed);
    p.put("out", run->out);
  } else if (const auto* run = std::get_if<Schelling1dRun>(&config)) {
    p.put("kind", "schelling1d");
    p.put("max_sweeps", run->max_sweeps);
    p.put("seed", run->seed);
    p.put("out", run->out);
  } else {
    const McRun& mc = std::get<McRun>(config);
    p.put("kind", "mc");
    const char* name = mc.integrand == McRun::Integrand::QuarterCircle ? "quarter_circle"
                       : mc.integrand == McRun::Integrand::Identity    ? "identity"
                                                                       : "exp";
    p.put("integrand", name);
    p.put("a", mc.a);
    p.put("b", mc.b);
    p.put("n", mc.n);
    p.put("seed", mc.seed);
    p.put("out", mc.out);
  }
  return p.take();
}

const std::string& out_prefix(const RunConfig& config) {
  return std::visit([](const auto& run) -> const std::string& { return run.out; }, config);
}

void set_seed(RunConfig& config, std::uint64_t seed) {
  std::visit(
      [seed](auto& run) {
        using T = std::decay_t<decltype(run)>;
        if constexpr (std::is_same_v<T, NbodyRun>)
          run.engine.seed = seed;
        else if constexpr (std::is_same_v<T, SchellingRun>)
          run.engine.seed = seed;
        else
          run.seed = seed;
      },
      config);
}

void set_out(RunConfig& config, const std::string& out) {
  std::visit([&out](auto& run) { run.out = out; }, config);
}

}  // namespace trisim::config
