#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "trisim/agents.hpp"
#include "trisim/cellular.hpp"
#include "trisim/nbody.hpp"

namespace trisim::config {

/// Optional lower/upper limits on the two masses, checked by the realism
/// guard. Unset bounds are never warned about.
struct MassBounds {
  std::optional<double> planet_mass_min;
  std::optional<double> planet_mass_max;
  std::optional<double> satellite_mass_min;
  std::optional<double> satellite_mass_max;

  bool operator==(const MassBounds&) const = default;
};

struct NbodyRun {
  nbody::NBodyConfig engine;
  MassBounds bounds;
  std::string out = "out";

  bool operator==(const NbodyRun&) const = default;
};

struct EcaRun {
  enum class Init : std::uint8_t { Single, Random };

  int rule = 30;
  int width = 64;
  int steps = 64;
  cellular::Boundary boundary = cellular::Boundary::Zero;
  Init init = Init::Single;
  double density = 0.5;  // fill probability for init = random
  std::uint64_t seed = 0;
  std::string out = "out";

  bool operator==(const EcaRun&) const = default;
};

struct LifeRun {
  enum class Init : std::uint8_t { Random, Glider };

  int rows = 32;
  int cols = 32;
  int steps = 64;
  cellular::Topology topology = cellular::Topology::Torus;
  Init init = Init::Random;
  double density = 0.5;
  std::uint64_t seed = 0;
  std::string out = "out";

  bool operator==(const LifeRun&) const = default;
};

struct SchellingRun {
  agents::SchellingConfig engine;
  std::string out = "out";

  bool operator==(const SchellingRun&) const = default;
};

struct Schelling1dRun {
  int max_sweeps = 200;
  std::uint64_t seed = 0;
  std::string out = "out";

  bool operator==(const Schelling1dRun&) const = default;
};

struct McRun {
  enum class Integrand : std::uint8_t { QuarterCircle, Identity, Exp };

  Integrand integrand = Integrand::QuarterCircle;
  double a = 0.0;
  double b = 1.0;
  long long n = 1000000;
  std::uint64_t seed = 0;
  std::string out = "out";

  bool operator==(const McRun&) const = default;
};

using RunConfig =
    std::variant<NbodyRun, EcaRun, LifeRun, SchellingRun, Schelling1dRun, McRun>;

/// Parses the flat `key = value` format: UTF-8 text, one pair per line,
/// '#' starts a comment, a mandatory `kind` key selects the run type.
/// Unknown keys, duplicate keys, malformed lines and bad values all raise
/// ConfigError naming the key and line. Omitted keys take the defaults
/// above (the nbody defaults are the reference parameter list).
RunConfig parse_config(const std::string& text);

/// Renders a config back to the flat text format with every key explicit;
/// parse_config(print_config(c)) == c for all kinds.
std::string print_config(const RunConfig& config);

/// Output path prefix of any run kind.
const std::string& out_prefix(const RunConfig& config);

/// Replaces the seed / output prefix (CLI overrides).
void set_seed(RunConfig& config, std::uint64_t seed);
void set_out(RunConfig& config, const std::string& out);

}  // namespace trisim::config
