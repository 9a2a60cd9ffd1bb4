#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "trisim/config.hpp"
#include "trisim/errors.hpp"
#include "trisim/io.hpp"
#include "trisim/realism.hpp"

namespace {

constexpr char kVersion[] = "trisim 1.0.0";

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw trisim::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_command(const std::string& path, const std::string* out, const std::uint64_t* seed) {
  trisim::config::RunConfig cfg = trisim::config::parse_config(read_text_file(path));
  if (seed) trisim::config::set_seed(cfg, *seed);
  if (out) trisim::config::set_out(cfg, *out);
  for (const std::string& file : trisim::io::execute_run(cfg))
    std::cout << "wrote " << file << "\n";
  return 0;
}

int validate_command(const std::string& path) {
  const trisim::config::RunConfig cfg = trisim::config::parse_config(read_text_file(path));
  trisim::realism::RealismReport report;  // non-nbody kinds have nothing to guard
  if (const auto* nbody_run = std::get_if<trisim::config::NbodyRun>(&cfg))
    report = trisim::realism::realism_guard(*nbody_run);
  std::cout << trisim::realism::format_report(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic simulation workbench"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string run_path;
  std::string validate_path;
  std::string out_override;
  std::uint64_t seed_override = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run a config and write its output files");
  run_cmd->add_option("config-file", run_path, "run configuration file")->required();
  CLI::Option* out_opt =
      run_cmd->add_option("--out", out_override, "override the output path prefix");
  CLI::Option* seed_opt = run_cmd->add_option("--seed", seed_override, "override the seed");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "parse a config and print its realism report");
  validate_cmd->add_option("config-file", validate_path, "run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // bad usage is a configuration problem
  }

  try {
    if (run_cmd->parsed())
      return run_command(run_path, out_opt->count() ? &out_override : nullptr,
                         seed_opt->count() ? &seed_override : nullptr);
    if (validate_cmd->parsed()) return validate_command(validate_path);
    std::cout << app.help();
    return 2;
  } catch (const trisim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const trisim::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const trisim::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
