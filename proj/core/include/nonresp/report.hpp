#pragma once

#include <string>

#include "nonresp/montecarlo.hpp"
#include "nonresp/scenario.hpp"

namespace nonresp {

enum class OutputFormat { Text, Csv, Json };

OutputFormat parse_format(const std::string& name);  // "text" | "csv" | "json"

/// PRE table rendering. Text is column-aligned with 5-decimal cells and
/// footnote markers; CSV and JSON carry the same cells.
std::string render_table(const PreTable& table, OutputFormat fmt);

/// Simulation report rendering. The JSON form is parseable back into an
/// identical report (round-trip) and never depends on the thread count that
/// produced it.
std::string render_report(const SimulationReport& report, OutputFormat fmt);

/// Inverse of render_report(..., Json). Throws on malformed input.
SimulationReport parse_report_json(const std::string& text);

/// Population parameter block rendering for the params command.
std::string render_params(const PopulationParams& p, OutputFormat fmt);

}  // namespace nonresp
