#pragma once

#include "nonresp/design.hpp"

namespace nonresp {

/// Constants of the combined ratio-type class estimator
/// [a1*ybar_hh + a2*(Xbar - xbar)] * (eta*Xbar + lambda) / (eta*xbar + lambda)
/// and its two-phase analogue. eta must be nonzero.
struct ClassParams {
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double eta = 1.0;
  double lambda = 0.0;
};

/// Hansen-Hurwitz mean: (n1*mean(respondent y) + n2*mean(sub-sample y)) / n.
/// Plain respondent mean when n2 = 0; throws when no y was observed at all.
double hh_mean(const DrawnSample& s);

/// hh_mean * Xbar / xbar (single phase, Xbar known).
double ratio_estimate(const DrawnSample& s, double Xbar);

/// hh_mean + b * (Xbar - xbar); b is the least-squares slope of y on x over
/// the n1 + h2 units with observed y. Throws "slope undefined" when that set
/// has no x variation or fewer than two units.
double regression_estimate(const DrawnSample& s, double Xbar);

/// The class estimator; throws "class estimator pole" when eta*xbar + lambda
/// vanishes.
double class_estimate(const DrawnSample& s, double Xbar, const ClassParams& p);

/// Two-phase variants: Xbar replaced by the phase-one mean xbar'.
double ratio_estimate_2p(const DrawnSample& s);
double regression_estimate_2p(const DrawnSample& s);
double class_estimate_2p(const DrawnSample& s, const ClassParams& p);

/// Least-squares slope of y on x over the units with observed y.
double regression_slope(const DrawnSample& s);

}  // namespace nonresp
