#pragma once

#include <string>
#include <vector>

#include "trisim/agents.hpp"
#include "trisim/cellular.hpp"
#include "trisim/config.hpp"
#include "trisim/nbody.hpp"
#include "trisim/numerics.hpp"

namespace trisim::io {

/// Atomic write: the contents land in `path + ".tmp"` first and are
/// renamed into place, so readers never see a partial file. Throws
/// IoError carrying the path.
void write_file(const std::string& path, const std::string& contents);

// Serializers. All emit LF line endings and '.' decimal separators;
// floating-point values are printed with 17 significant digits so nothing
// is lost on round-trip.
std::string csv_nbody(const nbody::RunRecord& record);
std::string csv_trace(const agents::SegregationTrace& trace);
std::string csv_mc(const numerics::McEstimate& estimate);
std::string text_rows(const std::vector<cellular::CaRow>& frames);
std::string text_grids(const std::vector<cellular::LifeGrid>& frames);
std::string text_board(const agents::Board& board);
std::string text_line(const agents::Line1D& line);
std::string pgm_rows(const std::vector<cellular::CaRow>& frames);  // stacked space-time image
std::string pgm_grid(const cellular::LifeGrid& grid);

/// Runs the configured simulation and writes its output files next to the
/// config's `out` prefix. Returns the paths written:
///   nbody                 <prefix>.csv
///   eca, life             <prefix>.txt, <prefix>.pgm
///   schelling, schelling1d  <prefix>_trace.csv, <prefix>_final.txt
///   mc                    <prefix>.csv
std::vector<std::string> execute_run(const config::RunConfig& config);

}  // namespace trisim::io
