#include "nonresp/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace nonresp {

namespace {

double mean_y(const std::vector<XY>& v) {
  double s = 0.0;
  for (const XY& u : v) s += u.y;
  return s / static_cast<double>(v.size());
}

}  // namespace

double hh_mean(const DrawnSample& s) {
  if (s.n() == 0) throw std::invalid_argument("hh_mean: empty sample");
  if (s.n1 == 0 && s.h2 == 0)
    throw std::invalid_argument("hh_mean: no study values observed");
  if (s.n2 == 0) return mean_y(s.respondents);
  const double sub_mean = mean_y(s.nonresp_sub);
  if (s.n1 == 0) return sub_mean;  // the n1-weighted term vanishes
  return (static_cast<double>(s.n1) * mean_y(s.respondents) +
          static_cast<double>(s.n2) * sub_mean) /
         static_cast<double>(s.n());
}

double ratio_estimate(const DrawnSample& s, double Xbar) {
  const double xbar = s.mean_x();
  if (xbar == 0.0)
    throw std::invalid_argument("ratio_estimate: sample mean of x is zero");
  return hh_mean(s) * (Xbar / xbar);
}

double regression_slope(const DrawnSample& s) {
  // fit over the units where y was observed: respondents plus sub-sample
  double sx = 0.0, sy = 0.0;
  std::size_t m = s.respondents.size() + s.nonresp_sub.size();
  if (m < 2) throw std::invalid_argument("regression: slope undefined");
  for (const XY& u : s.respondents) {
    sx += u.x;
    sy += u.y;
  }
  for (const XY& u : s.nonresp_sub) {
    sx += u.x;
    sy += u.y;
  }
  const double mx = sx / static_cast<double>(m);
  const double my = sy / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (const XY& u : s.respondents) {
    sxx += (u.x - mx) * (u.x - mx);
    sxy += (u.x - mx) * (u.y - my);
  }
  for (const XY& u : s.nonresp_sub) {
    sxx += (u.x - mx) * (u.x - mx);
    sxy += (u.x - mx) * (u.y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("regression: slope undefined");
  return sxy / sxx;
}

double regression_estimate(const DrawnSample& s, double Xbar) {
  return hh_mean(s) + regression_slope(s) * (Xbar - s.mean_x());
}

double class_estimate(const DrawnSample& s, double Xbar,
                      const ClassParams& p) {
  if (p.eta == 0.0) throw std::invalid_argument("class estimator: eta = 0");
  const double xbar = s.mean_x();
  const double den = p.eta * xbar + p.lambda;
  if (den == 0.0) throw std::invalid_argument("class estimator pole");
  const double bracket = p.alpha1 * hh_mean(s) + p.alpha2 * (Xbar - xbar);
  return bracket * ((p.eta * Xbar + p.lambda) / den);
}

double ratio_estimate_2p(const DrawnSample& s) {
  const double xbar1 = s.mean_x_phase1();
  const double xbar = s.mean_x();
  if (xbar == 0.0)
    throw std::invalid_argument("ratio_estimate: sample mean of x is zero");
  return hh_mean(s) * (xbar1 / xbar);
}

double regression_estimate_2p(const DrawnSample& s) {
  return hh_mean(s) + regression_slope(s) * (s.mean_x_phase1() - s.mean_x());
}

double class_estimate_2p(const DrawnSample& s, const ClassParams& p) {
  if (p.eta == 0.0) throw std::invalid_argument("class estimator: eta = 0");
  const double xbar1 = s.mean_x_phase1();
  const double xbar = s.mean_x();
  const double den = p.eta * xbar + p.lambda;
  if (den == 0.0) throw std::invalid_argument("class estimator pole");
  const double bracket = p.alpha1 * hh_mean(s) + p.alpha2 * (xbar1 - xbar);
  return bracket * ((p.eta * xbar1 + p.lambda) / den);
}

}  // namespace nonresp
