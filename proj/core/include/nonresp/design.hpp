#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "nonresp/population.hpp"
#include "nonresp/rng.hpp"

namespace nonresp {

struct SinglePhase {
  std::size_t n = 0;
};

// phase one draws n_prime units (auxiliary only), phase two n of those n_prime
struct TwoPhase {
  std::size_t n_prime = 0;
  std::size_t n = 0;
};

/// Non-response mechanism. GroupDeterministic (the default, empty
/// bernoulli_p): a sampled unit responds iff its population group is
/// Respondent. Bernoulli: every sampled unit responds independently with
/// probability 1 - p.
struct Design {
  std::variant<SinglePhase, TwoPhase> phase{SinglePhase{}};
  double k = 1.0;  // sub-sampling factor, h2 = n2 / k, k >= 1
  std::optional<double> bernoulli_p{};

  bool two_phase() const { return std::holds_alternative<TwoPhase>(phase); }
  std::size_t n() const {
    return two_phase() ? std::get<TwoPhase>(phase).n
                       : std::get<SinglePhase>(phase).n;
  }
  std::size_t n_prime() const {
    return two_phase() ? std::get<TwoPhase>(phase).n_prime : 0;
  }

  /// Throws std::invalid_argument unless 2 <= n <= N (single phase),
  /// 2 <= n < n' <= N (two phase) and k >= 1.
  void validate_for(std::size_t N) const;
};

struct XY {
  double y = 0.0;
  double x = 0.0;
};

/// One realized sample. y is observed on the n1 respondents and on the h2
/// sub-sampled non-respondents; x is observed on all n sampled units (and on
/// all n' phase-one units in a two-phase design).
struct DrawnSample {
  std::vector<XY> respondents;            // n1 units
  std::vector<XY> nonresp_sub;            // h2 interviewed non-respondents
  std::vector<double> nonresp_x_only;     // the n2 - h2 remaining x values
  std::optional<std::vector<double>> phase1_x;  // n' values, two-phase only
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t h2 = 0;

  std::size_t n() const { return n1 + n2; }
  bool zero_respondents() const { return n1 == 0; }

  /// Mean of x over all n sampled units.
  double mean_x() const;
  /// Mean of x over the n' phase-one units; throws if not two-phase.
  double mean_x_phase1() const;
};

/// n distinct indices in [0, N), every size-n subset equiprobable.
/// Throws std::invalid_argument when n > N or n == 0.
std::vector<std::uint32_t> draw_srswor(std::size_t N, std::size_t n, Rng& rng);

/// Draw one sample under `design`: SRSWOR phase draws, the non-response
/// mechanism, and Hansen-Hurwitz sub-sampling of h2 = max(1, rhu(n2/k))
/// non-respondents (h2 = 0 when n2 = 0). Pure in (design, pop, rng state).
DrawnSample realize(const Design& design, const FinitePopulation& pop,
                    Rng& rng);

}  // namespace nonresp
