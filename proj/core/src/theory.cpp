#include "nonresp/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace nonresp {

namespace {

double fpc(std::size_t n, std::size_t N) {
  return 1.0 / static_cast<double>(n) - 1.0 / static_cast<double>(N);
}

double phase_gap(std::size_t n, std::size_t n_prime) {
  return 1.0 / static_cast<double>(n) - 1.0 / static_cast<double>(n_prime);
}

// ((k-1)/n) W2 S2_Y2, the sub-sampling (non-response) addend
double nr_term(const PopulationParams& p, std::size_t n, double k) {
  return (k - 1.0) / static_cast<double>(n) * p.W2 * p.S2_Y2;
}

void check_sizes(const PopulationParams& p, std::size_t n) {
  if (n == 0 || n > p.N)
    throw std::invalid_argument("theory: need 1 <= n <= N");
}

void check_sizes_2p(const PopulationParams& p, std::size_t n_prime,
                    std::size_t n) {
  if (n == 0 || n > n_prime || n_prime > p.N)
    throw std::invalid_argument("theory: need 1 <= n <= n' <= N");
}

void check_k(double k) {
  if (k < 1.0) throw std::invalid_argument("theory: k must be >= 1");
}

}  // namespace

double tau(double eta, double lambda, double Xbar) {
  if (eta == 0.0) throw std::invalid_argument("tau: eta must be nonzero");
  const double den = eta * Xbar + lambda;
  if (den == 0.0) throw std::invalid_argument("tau: eta*Xbar + lambda = 0");
  return eta * Xbar / den;
}

MsePiece var_hh(const PopulationParams& p, std::size_t n, double k) {
  check_sizes(p, n);
  check_k(k);
  MsePiece out;
  out.components = {{"srswor", fpc(n, p.N) * p.S2_Y},
                    {"non-response", nr_term(p, n, k)}};
  out.value = out.components[0].value + out.components[1].value;
  return out;
}

MsePiece mse_ratio(const PopulationParams& p, std::size_t n, double k) {
  check_sizes(p, n);
  check_k(k);
  const double bracket =
      p.C_Y * p.C_Y + p.C_X * p.C_X - 2.0 * p.rho * p.C_X * p.C_Y;
  MsePiece out;
  out.components = {{"srswor", fpc(n, p.N) * p.Ybar * p.Ybar * bracket},
                    {"non-response", nr_term(p, n, k)}};
  out.value = out.components[0].value + out.components[1].value;
  return out;
}

MsePiece mse_regression(const PopulationParams& p, std::size_t n, double k) {
  check_sizes(p, n);
  check_k(k);
  const double bracket = p.C_Y * p.C_Y * (1.0 - p.rho * p.rho);
  MsePiece out;
  out.components = {{"srswor", fpc(n, p.N) * p.Ybar * p.Ybar * bracket},
                    {"non-response", nr_term(p, n, k)}};
  out.value = out.components[0].value + out.components[1].value;
  return out;
}

MsePiece mse_ratio_2p(const PopulationParams& p, std::size_t n_prime,
                      std::size_t n, double k) {
  check_sizes_2p(p, n_prime, n);
  check_k(k);
  const double y2 = p.Ybar * p.Ybar;
  const double bracket =
      p.C_Y * p.C_Y + p.C_X * p.C_X - 2.0 * p.rho * p.C_X * p.C_Y;
  MsePiece out;
  out.components = {{"phase1", fpc(n_prime, p.N) * y2 * p.C_Y * p.C_Y},
                    {"phase2", phase_gap(n, n_prime) * y2 * bracket},
                    {"non-response", nr_term(p, n, k)}};
  out.value = out.components[0].value + out.components[1].value +
              out.components[2].value;
  return out;
}

MsePiece mse_regression_2p(const PopulationParams& p, std::size_t n_prime,
                           std::size_t n, double k) {
  check_sizes_2p(p, n_prime, n);
  check_k(k);
  const double y2 = p.Ybar * p.Ybar;
  MsePiece out;
  out.components = {
      {"phase1", fpc(n_prime, p.N) * y2 * p.C_Y * p.C_Y},
      {"phase2",
       phase_gap(n, n_prime) * y2 * p.C_Y * p.C_Y * (1.0 - p.rho * p.rho)},
      {"non-response", nr_term(p, n, k)}};
  out.value = out.components[0].value + out.components[1].value +
              out.components[2].value;
  return out;
}

double bias_class(const PopulationParams& p, std::size_t n, double k,
                  const ClassParams& cp) {
  check_sizes(p, n);
  check_k(k);
  const double t = tau(cp.eta, cp.lambda, p.Xbar);
  return p.Ybar * (cp.alpha1 - 1.0) +
         fpc(n, p.N) *
             (cp.alpha1 * p.Ybar *
                  (t * t * p.C_X * p.C_X - t * p.rho * p.C_X * p.C_Y) +
              cp.alpha2 * p.Xbar * t * p.C_X * p.C_X);
}

double mse_class(const PopulationParams& p, std::size_t n, double k,
                 const ClassParams& cp) {
  check_sizes(p, n);
  check_k(k);
  const double t = tau(cp.eta, cp.lambda, p.Xbar);
  const double a1 = cp.alpha1, a2 = cp.alpha2;
  const double y2 = p.Ybar * p.Ybar;
  const double quad =
      a1 * a1 * y2 *
          (p.C_Y * p.C_Y + t * t * p.C_X * p.C_X -
           2.0 * t * p.rho * p.C_X * p.C_Y) +
      a2 * a2 * p.Xbar * p.Xbar * p.C_X * p.C_X -
      2.0 * a1 * a2 * p.Ybar * p.Xbar * p.C_X *
          (p.rho * p.C_Y - t * p.C_X);
  return y2 * (a1 - 1.0) * (a1 - 1.0) + fpc(n, p.N) * quad +
         a1 * a1 * nr_term(p, n, k);
}

namespace {

// shared denominator of the single-phase optimum and minimum MSE
double min_denominator(const PopulationParams& p, std::size_t n, double k) {
  return 1.0 + fpc(n, p.N) * p.C_Y * p.C_Y * (1.0 - p.rho * p.rho) +
         nr_term(p, n, k) / (p.Ybar * p.Ybar);
}

// two-phase counterpart: the rho^2 reduction only acts on the phase gap
double min_denominator_2p(const PopulationParams& p, std::size_t n_prime,
                          std::size_t n, double k) {
  return 1.0 + fpc(n, p.N) * p.C_Y * p.C_Y -
         phase_gap(n, n_prime) * p.rho * p.rho * p.C_Y * p.C_Y +
         nr_term(p, n, k) / (p.Ybar * p.Ybar);
}

}  // namespace

OptimumAlphas optimum_alphas(const PopulationParams& p, std::size_t n,
                             double k, double eta, double lambda) {
  check_sizes(p, n);
  check_k(k);
  if (p.C_X <= 0.0)
    throw std::invalid_argument("optimum_alphas: C_X must be positive");
  const double t = tau(eta, lambda, p.Xbar);
  const double den = min_denominator(p, n, k);
  if (!(den > 0.0))
    throw std::invalid_argument("optimum_alphas: non-positive denominator");
  OptimumAlphas out;
  out.alpha1 = 1.0 / den;
  out.alpha2 =
      out.alpha1 * p.Ybar * (p.rho * p.C_Y - t * p.C_X) / (p.Xbar * p.C_X);
  return out;
}

double min_mse_class(const PopulationParams& p, std::size_t n, double k) {
  if (p.C_X <= 0.0)
    throw std::invalid_argument("min_mse_class: C_X must be positive");
  return mse_regression(p, n, k).value / min_denominator(p, n, k);
}

double bias_class_2p(const PopulationParams& p, std::size_t n_prime,
                     std::size_t n, double k, const ClassParams& cp) {
  check_sizes_2p(p, n_prime, n);
  check_k(k);
  const double t = tau(cp.eta, cp.lambda, p.Xbar);
  return p.Ybar * (cp.alpha1 - 1.0) +
         phase_gap(n, n_prime) * t *
             (cp.alpha1 * p.Ybar *
                  (p.C_X * p.C_X - p.rho * p.C_X * p.C_Y) +
              cp.alpha2 * p.Xbar * p.C_X * p.C_X);
}

double mse_class_2p(const PopulationParams& p, std::size_t n_prime,
                    std::size_t n, double k, const ClassParams& cp) {
  check_sizes_2p(p, n_prime, n);
  check_k(k);
  const double t = tau(cp.eta, cp.lambda, p.Xbar);
  const double a1 = cp.alpha1, a2 = cp.alpha2;
  const double y2 = p.Ybar * p.Ybar;
  const double gap = phase_gap(n, n_prime);
  const double a1_quad =
      fpc(n, p.N) * p.C_Y * p.C_Y +
      gap * (t * t * p.C_X * p.C_X - 2.0 * t * p.rho * p.C_X * p.C_Y) +
      nr_term(p, n, k) / y2;
  return y2 * (a1 - 1.0) * (a1 - 1.0) + a1 * a1 * y2 * a1_quad +
         gap * (a2 * a2 * p.Xbar * p.Xbar * p.C_X * p.C_X +
                2.0 * a1 * a2 * p.Xbar * p.Ybar *
                    (t * p.C_X * p.C_X - p.rho * p.C_X * p.C_Y));
}

OptimumAlphas optimum_alphas_2p(const PopulationParams& p,
                                std::size_t n_prime, std::size_t n, double k,
                                double eta, double lambda) {
  check_sizes_2p(p, n_prime, n);
  check_k(k);
  if (p.C_X <= 0.0)
    throw std::invalid_argument("optimum_alphas: C_X must be positive");
  const double t = tau(eta, lambda, p.Xbar);
  const double den = min_denominator_2p(p, n_prime, n, k);
  if (!(den > 0.0))
    throw std::invalid_argument("optimum_alphas: non-positive denominator");
  OptimumAlphas out;
  out.alpha1 = 1.0 / den;
  out.alpha2 =
      out.alpha1 * p.Ybar * (p.rho * p.C_Y - t * p.C_X) / (p.Xbar * p.C_X);
  return out;
}

double min_mse_class_2p(const PopulationParams& p, std::size_t n_prime,
                        std::size_t n, double k) {
  if (p.C_X <= 0.0)
    throw std::invalid_argument("min_mse_class: C_X must be positive");
  return mse_regression_2p(p, n_prime, n, k).value /
         min_denominator_2p(p, n_prime, n, k);
}

double pre(double mse_estimator, double mse_baseline) {
  if (!(mse_estimator > 0.0))
    throw std::invalid_argument("pre: estimator MSE must be positive");
  return 100.0 * mse_baseline / mse_estimator;
}

}  // namespace nonresp
