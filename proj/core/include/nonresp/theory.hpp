#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nonresp/estimators.hpp"
#include "nonresp/population.hpp"

namespace nonresp {

struct MseComponent {
  std::string label;
  double value = 0.0;
};

/// A variance or MSE in y-units^2, decomposed into labeled addends
/// (sampling terms and the non-response term). value == sum of components.
struct MsePiece {
  double value = 0.0;
  std::vector<MseComponent> components;
};

struct OptimumAlphas {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

// All formulas are design-based, first-order approximations where the
// estimator is nonlinear. n is the (phase-two) sample size, n_prime the
// phase-one size, k the sub-sampling factor; W2 and S2_Y2 come from p.

/// Expansion coefficient of the class factor: eta*Xbar / (eta*Xbar + lambda).
double tau(double eta, double lambda, double Xbar);

/// Variance of the Hansen-Hurwitz mean:
/// (1/n - 1/N) S2_Y + ((k-1)/n) W2 S2_Y2.
MsePiece var_hh(const PopulationParams& p, std::size_t n, double k);

/// MSE of the ratio estimator with known Xbar.
MsePiece mse_ratio(const PopulationParams& p, std::size_t n, double k);

/// MSE of the regression estimator with known Xbar.
MsePiece mse_regression(const PopulationParams& p, std::size_t n, double k);

/// Two-phase ratio estimator MSE.
MsePiece mse_ratio_2p(const PopulationParams& p, std::size_t n_prime,
                      std::size_t n, double k);

/// Two-phase regression estimator MSE.
MsePiece mse_regression_2p(const PopulationParams& p, std::size_t n_prime,
                           std::size_t n, double k);

/// First-order bias and MSE of the class estimator (known Xbar).
double bias_class(const PopulationParams& p, std::size_t n, double k,
                  const ClassParams& cp);
double mse_class(const PopulationParams& p, std::size_t n, double k,
                 const ClassParams& cp);

/// Constants minimizing mse_class for a given shape (eta, lambda).
OptimumAlphas optimum_alphas(const PopulationParams& p, std::size_t n,
                             double k, double eta, double lambda);

/// mse_class at the optimum constants; independent of (eta, lambda).
double min_mse_class(const PopulationParams& p, std::size_t n, double k);

/// Two-phase class analogues.
double bias_class_2p(const PopulationParams& p, std::size_t n_prime,
                     std::size_t n, double k, const ClassParams& cp);
double mse_class_2p(const PopulationParams& p, std::size_t n_prime,
                    std::size_t n, double k, const ClassParams& cp);
OptimumAlphas optimum_alphas_2p(const PopulationParams& p, std::size_t n_prime,
                                std::size_t n, double k, double eta,
                                double lambda);
double min_mse_class_2p(const PopulationParams& p, std::size_t n_prime,
                        std::size_t n, double k);

/// Percentage relative efficiency: 100 * mse_baseline / mse_estimator.
double pre(double mse_estimator, double mse_baseline);

}  // namespace nonresp
