#pragma once

// Tabular and JSON output for the model results.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sipmac/catalog.hpp"
#include "sipmac/energy.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/mesh.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/scaling.hpp"

namespace sipmac {

using Json = nlohmann::json;

/// Column-named table of pre-formatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  /// Comma separated, header row, LF line endings. Cells containing a comma
  /// or quote are quoted.
  std::string to_csv() const;
  /// Array of objects; numeric-looking cells become numbers.
  Json to_json() const;
};

/// Parses CSV produced by Table::to_csv.
Table parse_csv(const std::string& text);

std::string fmt_dbm(double dbm);          // 3 decimals
std::string fmt_fj(double joules);        // fJ with 2 decimals
std::string fmt_num(double value);        // 9 significant digits
std::string fmt_int(long long value);

/// Writes next to the target and renames into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

Table link_budget_table(const LinkBudgetReport& report);
Table energy_table(const std::vector<std::pair<SimConfig, EnergyBreakdown>>& rows);
Table sweep_table(const std::vector<SweepRow>& rows);

Json to_json(const LinkBudgetReport& report);
Json to_json(const EnergyBreakdown& e);
Json to_json(const ResolutionResult& r);
Json to_json(const ScalingResult& r);
Json to_json(const SoaPlan& p);
Json to_json(const SimConfig& cfg);

/// {N, nodes: [{m, theta, phi}], output_phases: [...]}
Json program_to_json(const ClementsProgram& p);
ClementsProgram program_from_json(const Json& j);

/// {"real": [[...]], "imag": [[...]]}; a bare array of rows is read as real.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

}  // namespace sipmac
