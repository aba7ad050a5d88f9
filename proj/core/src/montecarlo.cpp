#include "nonresp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace nonresp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string label_for(EstimatorKind kind, bool two_phase) {
  switch (kind) {
    case EstimatorKind::HHMean:
      return "hh";
    case EstimatorKind::Ratio:
      return two_phase ? "ratio_2p" : "ratio";
    case EstimatorKind::Regression:
      return two_phase ? "regression_2p" : "regression";
    case EstimatorKind::ClassEstimator:
      return two_phase ? "class_2p" : "class";
  }
  return "?";
}

double evaluate(EstimatorKind kind, const DrawnSample& s, bool two_phase,
                double Xbar, const ClassParams& cp) {
  switch (kind) {
    case EstimatorKind::HHMean:
      return hh_mean(s);
    case EstimatorKind::Ratio:
      return two_phase ? ratio_estimate_2p(s) : ratio_estimate(s, Xbar);
    case EstimatorKind::Regression:
      return two_phase ? regression_estimate_2p(s)
                       : regression_estimate(s, Xbar);
    case EstimatorKind::ClassEstimator:
      return two_phase ? class_estimate_2p(s, cp)
                       : class_estimate(s, Xbar, cp);
  }
  return kNaN;
}

}  // namespace

SimulationReport run_simulation(const FinitePopulation& pop,
                                const Design& design,
                                const std::vector<EstimatorKind>& estimators,
                                const ClassChoice& cls, std::size_t R,
                                std::uint64_t seed, int threads) {
  if (R < 100)
    throw std::invalid_argument("run_simulation: R must be >= 100");
  if (estimators.empty())
    throw std::invalid_argument("run_simulation: no estimators requested");
  design.validate_for(pop.size());
  const PopulationParams p = compute_params(pop);
  const bool two_phase = design.two_phase();

  const bool wants_class =
      std::find(estimators.begin(), estimators.end(),
                EstimatorKind::ClassEstimator) != estimators.end();
  ClassParams cp;
  if (cls.fixed) {
    cp = *cls.fixed;
  } else if (wants_class) {
    const OptimumAlphas opt =
        two_phase ? optimum_alphas_2p(p, design.n_prime(), design.n(),
                                      design.k, cls.eta, cls.lambda)
                  : optimum_alphas(p, design.n(), design.k, cls.eta,
                                   cls.lambda);
    cp = {opt.alpha1, opt.alpha2, cls.eta, cls.lambda};
  }

  const std::size_t E = estimators.size();
  std::vector<std::vector<double>> est(E, std::vector<double>(R, kNaN));

  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      Rng rng = Rng::child(seed, r);
      const DrawnSample s = realize(design, pop, rng);
      for (std::size_t e = 0; e < E; ++e) {
        try {
          est[e][r] = evaluate(estimators[e], s, two_phase, p.Xbar, cp);
        } catch (const std::invalid_argument&) {
          est[e][r] = kNaN;  // degenerate realization for this estimator
        }
      }
    }
  };

  const int T = std::max(1, threads);
  if (T == 1 || R < 2 * static_cast<std::size_t>(T)) {
    worker(0, R);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (R + T - 1) / T;
    for (int t = 0; t < T; ++t) {
      const std::size_t lo = static_cast<std::size_t>(t) * chunk;
      if (lo >= R) break;
      pool.emplace_back(worker, lo, std::min(R, lo + chunk));
    }
    for (auto& th : pool) th.join();
  }

  // reduction is sequential in replication order so the report does not
  // depend on the thread count
  SimulationReport report;
  report.meta = {R, seed, design, 0};
  std::size_t degenerate = 0;
  for (std::size_t r = 0; r < R; ++r) {
    bool any_nan = false;
    for (std::size_t e = 0; e < E; ++e) any_nan |= std::isnan(est[e][r]);
    if (any_nan) ++degenerate;
  }
  report.meta.degenerate_count = degenerate;

  for (std::size_t e = 0; e < E; ++e) {
    EstimatorResult res;
    res.label = label_for(estimators[e], two_phase);
    res.first_order = estimators[e] != EstimatorKind::HHMean;
    if (estimators[e] == EstimatorKind::ClassEstimator) res.class_params = cp;

    double sum = 0.0, sum_sq_err = 0.0;
    std::size_t used = 0;
    for (std::size_t r = 0; r < R; ++r) {
      const double v = est[e][r];
      if (std::isnan(v)) continue;
      ++used;
      sum += v;
      const double d = v - p.Ybar;
      sum_sq_err += d * d;
    }
    res.used = used;
    if (used == 0) {
      res.failed = true;
      report.estimators.push_back(std::move(res));
      continue;
    }
    res.empirical_mean = sum / static_cast<double>(used);
    res.empirical_bias = res.empirical_mean - p.Ybar;
    res.empirical_mse = sum_sq_err / static_cast<double>(used);
    double var_sq = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      const double v = est[e][r];
      if (std::isnan(v)) continue;
      const double d = v - p.Ybar;
      const double dev = d * d - res.empirical_mse;
      var_sq += dev * dev;
    }
    res.mse_standard_error =
        used >= 2 ? std::sqrt(var_sq / static_cast<double>(used - 1) /
                              static_cast<double>(used))
                  : 0.0;
    report.estimators.push_back(std::move(res));
  }
  return report;
}

SimulationReport compare_theory(SimulationReport report,
                                const PopulationParams& p,
                                const Design& design) {
  const bool two_phase = design.two_phase();
  const std::size_t n = design.n();
  const std::size_t n_prime = design.n_prime();
  const double k = design.k;
  const bool has_formula = !design.bernoulli_p.has_value();

  for (EstimatorResult& res : report.estimators) {
    res.theoretical_value.reset();
    res.z_score.reset();
    res.flagged = false;
    if (res.failed || !has_formula) continue;

    if (res.label == "hh") {
      res.theoretical_value = var_hh(p, n, k).value;
    } else if (res.label == "ratio") {
      res.theoretical_value = mse_ratio(p, n, k).value;
    } else if (res.label == "ratio_2p") {
      res.theoretical_value = mse_ratio_2p(p, n_prime, n, k).value;
    } else if (res.label == "regression") {
      res.theoretical_value = mse_regression(p, n, k).value;
    } else if (res.label == "regression_2p") {
      res.theoretical_value = mse_regression_2p(p, n_prime, n, k).value;
    } else if (res.label == "class" && res.class_params) {
      res.theoretical_value = mse_class(p, n, k, *res.class_params);
    } else if (res.label == "class_2p" && res.class_params) {
      res.theoretical_value =
          mse_class_2p(p, n_prime, n, k, *res.class_params);
    } else {
      continue;  // no applicable formula; row stays n/a
    }

    const double theo = *res.theoretical_value;
    const double diff = res.empirical_mse - theo;
    if (res.mse_standard_error > 0.0)
      res.z_score = diff / res.mse_standard_error;
    const double band = 3.0 * res.mse_standard_error +
                        (res.first_order ? 0.02 * theo : 0.0);
    res.flagged = std::abs(diff) > band;
  }
  return report;
}

}  // namespace nonresp
