#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nonresp/design.hpp"
#include "nonresp/estimators.hpp"
#include "nonresp/population.hpp"
#include "nonresp/theory.hpp"

namespace nonresp {

enum class EstimatorKind { HHMean, Ratio, Regression, ClassEstimator };

/// How the class estimator's constants are chosen: fixed values, or the
/// optimum constants computed from the true population parameters for the
/// shape (eta, lambda).
struct ClassChoice {
  std::optional<ClassParams> fixed{};
  double eta = 1.0;
  double lambda = 0.0;
};

struct EstimatorResult {
  std::string label;
  double empirical_mean = 0.0;
  double empirical_bias = 0.0;
  double empirical_mse = 0.0;
  double mse_standard_error = 0.0;
  std::optional<double> theoretical_value{};
  std::optional<double> z_score{};
  std::optional<ClassParams> class_params{};  // resolved constants, class rows
  bool first_order = false;  // theory is a first-order approximation
  bool flagged = false;      // empirical vs theory outside the acceptance band
  bool failed = false;       // every replication was degenerate
  std::size_t used = 0;      // replications contributing to the averages
};

struct SimulationMeta {
  std::size_t R = 0;
  std::uint64_t seed = 0;
  Design design{};
  std::size_t degenerate_count = 0;  // replications with >= 1 undefined row
};

struct SimulationReport {
  std::vector<EstimatorResult> estimators;
  SimulationMeta meta;
};

/// R independent realizations of `design` over `pop`; replication r draws
/// from the child stream (seed, r), so the report is bit-identical for any
/// thread count. Empirical MSE is the mean of (estimate - Ybar)^2 over the
/// replications where the estimator is defined; mse_standard_error is the
/// standard deviation of those squared errors over sqrt(used).
/// Requires R >= 100.
SimulationReport run_simulation(const FinitePopulation& pop,
                                const Design& design,
                                const std::vector<EstimatorKind>& estimators,
                                const ClassChoice& cls, std::size_t R,
                                std::uint64_t seed, int threads = 1);

/// Attach theoretical values and z-scores to a report. Flags a row when the
/// empirical MSE leaves the acceptance band: 3 standard errors, plus a 2%
/// relative slack for the first-order rows (ratio / regression / class).
/// Rows with no applicable formula (Bernoulli non-response) stay "n/a".
SimulationReport compare_theory(SimulationReport report,
                                const PopulationParams& p,
                                const Design& design);

}  // namespace nonresp
