#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "macksolve/baseflow.hpp"
#include "macksolve/eigensolver.hpp"

namespace macksolve {

using Json = nlohmann::json;

// Round-trip text for a double ("%.17g").
std::string num(double v);

// FNV-1a 64 of the compact dump of a config object (keys are sorted by Json).
std::string config_hash(const Json& config);

// Writes through a sibling temporary file and renames it into place; the
// temporary is removed when anything fails.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// CSV with "# key: value" metadata lines ahead of the column header.
std::string csv_text(const Json& meta, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

Json baseflow_json(const BaseFlow& flow);
BaseFlow baseflow_from_json(const Json& j);

// Mode record: alpha, c, boundary_residual, profile and residual norms.
Json mode_json(const Mode& mode);
struct ModeRecord {
  double alpha = 0.0;
  cd c;
  double boundary_residual = 0.0;
  std::vector<double> y;
  std::vector<cd> p;
  Json metadata;
};
ModeRecord mode_from_json(const Json& j);

}  // namespace macksolve
