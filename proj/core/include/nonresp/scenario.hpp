#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nonresp/design.hpp"
#include "nonresp/population.hpp"

namespace nonresp {

/// A fully resolved scenario: population parameters, sampling plan, class
/// shape and the W2 grid. Built from a preset or a spec JSON file.
struct ScenarioSpec {
  std::string name = "custom";
  PopulationParams params;  // W2 field is per-row; see W2_values
  Design design;
  double eta = 1.0;
  double lambda = 0.0;
  std::vector<double> W2_values = {0.1, 0.2, 0.3, 0.4, 0.5};
};

/// Built-in scenarios table1 / table2 / table3 (the bundled reference
/// parameter sets). Throws std::invalid_argument for an unknown name.
ScenarioSpec preset(const std::string& name);

/// Parse a scenario from spec JSON. Top-level keys: params, design,
/// class_shape, W2_values; unknown keys anywhere are rejected by name.
/// params takes exactly one of S2_Y | C_Y (and S2_X | C_X), and exactly one
/// of S2_Y2 | S2_Y2_ratio.
ScenarioSpec parse_spec_json(const std::string& text);

/// One row of a PRE table: efficiencies of the ratio, regression and
/// optimum-class estimators against the Hansen-Hurwitz mean at a given W2.
struct PreRow {
  double W2 = 0.0;
  double pre_ratio = 0.0;
  double pre_regression = 0.0;
  double pre_class_opt = 0.0;
};

/// Footnote marker on one cell; column 0 = ratio, 1 = regression, 2 = class.
struct CellNote {
  std::size_t row = 0;
  int column = 0;
  std::size_t footnote = 0;
};

struct PreTable {
  std::string scenario;
  bool two_phase = false;
  std::vector<PreRow> rows;
  std::vector<std::string> footnotes;  // rendered after the table
  std::vector<CellNote> marks;
};

/// Compute the PRE table for a scenario: per W2, cells are
/// 100 * V(hh) / MSE(estimator), with the single- or two-phase formula set
/// chosen by the scenario's design.
PreTable compute_pre_table(const ScenarioSpec& spec);

}  // namespace nonresp
