#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bgl/diagnostics.hpp"
#include "bgl/state.hpp"

namespace bgl {

/// Header line plus one line per row; values as %.17g, missing values empty.
std::string series_csv(const std::vector<DiagnosticsRow>& rows, const DiagnosticsConfig& cfg);
std::string csv_header_line(const DiagnosticsConfig& cfg);
std::string csv_row_line(const DiagnosticsRow& row);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  /// Column index or -1.
  int column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);

/// BGL1 container: "BGL1 <model> <n1> <n2> <t> <nu>\n" then the two
/// prognostic fields (ρ, ω or u^θ, ω^θ) as little-endian float64, row-major,
/// then optionally the tracer count and tracer positions.
struct Checkpoint {
  Model model;
  double nu;
  SimState state;
  std::optional<TracerSet> tracers;
};

std::string encode_checkpoint(const Checkpoint& c);
Checkpoint decode_checkpoint(const std::string& bytes);

void write_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& path);

/// Whole-file helpers; throw IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bgl
