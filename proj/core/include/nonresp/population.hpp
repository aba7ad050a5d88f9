#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nonresp {

enum class Group : std::uint8_t { Respondent, NonRespondent };

struct Unit {
  double y = 0.0;  // study variable
  double x = 0.0;  // auxiliary variable, observed on every unit
  Group group = Group::Respondent;
};

/// The fixed finite population of N units. Ground truth for all designs and
/// simulations; value type, never mutated after construction.
struct FinitePopulation {
  std::vector<Unit> units;

  std::size_t size() const { return units.size(); }
};

/// Population-level parameters that drive every closed-form variance/MSE.
/// Mean squares use the N-1 divisor throughout.
struct PopulationParams {
  std::size_t N = 0;
  double Ybar = 0.0;
  double Xbar = 0.0;   // must be nonzero (ratio-type estimators)
  double S2_Y = 0.0;
  double S2_X = 0.0;
  double C_Y = 0.0;    // sqrt(S2_Y) / |Ybar|
  double C_X = 0.0;    // sqrt(S2_X) / |Xbar|
  double rho = 0.0;    // correlation of y and x
  double W2 = 0.0;     // non-response rate, N2 / N
  double S2_Y2 = 0.0;  // mean square of y over the non-response group
};

/// Exact parameters of a population. Throws std::invalid_argument when the
/// population is empty, has Xbar == 0, or has no respondents.
/// rho is defined as 0 when either variable is constant; S2_Y2 is 0 when the
/// non-response group has fewer than two units.
PopulationParams compute_params(const FinitePopulation& pop);

/// Generate a population matching `target`, deterministically in `seed`.
///
/// N and W2 (round-half-up of W2*N non-respondent units) are hit exactly;
/// Ybar, Xbar, S2_Y, S2_X, rho and S2_Y2 to floating round-off. Shapes are
/// Gaussian before the exact moment adjustment. Throws std::invalid_argument
/// for infeasible targets (see message).
FinitePopulation synthesize_population(const PopulationParams& target,
                                       std::uint64_t seed);

/// Parse a population CSV: header `y,x,group` (group optional, R|NR),
/// LF or CRLF. Throws std::runtime_error with a line number on bad input and
/// "no units" on an empty stream.
FinitePopulation load_population(std::istream& in);

/// Round-half-up to the nearest integer; used for W2*N and n2/k.
std::size_t round_half_up(double v);

}  // namespace nonresp
