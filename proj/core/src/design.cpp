#include "nonresp/design.hpp"

#include <stdexcept>

namespace nonresp {

void Design::validate_for(std::size_t N) const {
  if (k < 1.0) throw std::invalid_argument("design: k must be >= 1");
  if (bernoulli_p && !(*bernoulli_p >= 0.0 && *bernoulli_p <= 1.0))
    throw std::invalid_argument("design: Bernoulli p must lie in [0, 1]");
  if (two_phase()) {
    const auto& t = std::get<TwoPhase>(phase);
    if (t.n < 2 || t.n >= t.n_prime || t.n_prime > N)
      throw std::invalid_argument(
          "design: two-phase sizes must satisfy 2 <= n < n' <= N");
  } else {
    const auto& s = std::get<SinglePhase>(phase);
    if (s.n < 2 || s.n > N)
      throw std::invalid_argument("design: need 2 <= n <= N");
  }
}

double DrawnSample::mean_x() const {
  const std::size_t total = n();
  if (total == 0) throw std::invalid_argument("sample: empty");
  double s = 0.0;
  for (const XY& u : respondents) s += u.x;
  for (const XY& u : nonresp_sub) s += u.x;
  for (double x : nonresp_x_only) s += x;
  return s / static_cast<double>(total);
}

double DrawnSample::mean_x_phase1() const {
  if (!phase1_x)
    throw std::invalid_argument("sample: phase-one auxiliary values missing");
  double s = 0.0;
  for (double x : *phase1_x) s += x;
  return s / static_cast<double>(phase1_x->size());
}

std::vector<std::uint32_t> draw_srswor(std::size_t N, std::size_t n,
                                       Rng& rng) {
  if (n == 0 || n > N)
    throw std::invalid_argument("draw_srswor: need 1 <= n <= N");
  // partial Fisher-Yates over the index range
  std::vector<std::uint32_t> idx(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < n; ++i)
    std::swap(idx[i], idx[i + rng.below(N - i)]);
  idx.resize(n);
  return idx;
}

DrawnSample realize(const Design& design, const FinitePopulation& pop,
                    Rng& rng) {
  design.validate_for(pop.size());

  DrawnSample s;
  std::vector<std::uint32_t> sample;  // population indices of phase-two units
  if (design.two_phase()) {
    const auto& t = std::get<TwoPhase>(design.phase);
    auto phase1 = draw_srswor(pop.size(), t.n_prime, rng);
    std::vector<double> p1x(phase1.size());
    for (std::size_t i = 0; i < phase1.size(); ++i)
      p1x[i] = pop.units[phase1[i]].x;
    s.phase1_x = std::move(p1x);
    auto pick = draw_srswor(t.n_prime, t.n, rng);
    sample.reserve(t.n);
    for (std::uint32_t j : pick) sample.push_back(phase1[j]);
  } else {
    sample = draw_srswor(pop.size(), std::get<SinglePhase>(design.phase).n,
                         rng);
  }

  std::vector<std::uint32_t> nonresp_units;
  for (std::uint32_t i : sample) {
    const Unit& u = pop.units[i];
    const bool responds = design.bernoulli_p
                              ? !rng.bernoulli(*design.bernoulli_p)
                              : u.group == Group::Respondent;
    if (responds)
      s.respondents.push_back({u.y, u.x});
    else
      nonresp_units.push_back(i);
  }
  s.n1 = s.respondents.size();
  s.n2 = nonresp_units.size();

  if (s.n2 > 0) {
    s.h2 = std::max<std::size_t>(
        1, round_half_up(static_cast<double>(s.n2) / design.k));
    auto pick = draw_srswor(s.n2, s.h2, rng);
    std::vector<bool> in_sub(s.n2, false);
    for (std::uint32_t j : pick) in_sub[j] = true;
    for (std::size_t j = 0; j < s.n2; ++j) {
      const Unit& u = pop.units[nonresp_units[j]];
      if (in_sub[j])
        s.nonresp_sub.push_back({u.y, u.x});
      else
        s.nonresp_x_only.push_back(u.x);
    }
  }
  return s;
}

}  // namespace nonresp
