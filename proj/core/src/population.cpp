#include "nonresp/population.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nonresp/rng.hpp"

namespace nonresp {

std::size_t round_half_up(double v) {
  return static_cast<std::size_t>(std::floor(v + 0.5));
}

PopulationParams compute_params(const FinitePopulation& pop) {
  const std::size_t N = pop.size();
  if (N == 0) throw std::invalid_argument("compute_params: no units");

  double sum_y = 0.0, sum_x = 0.0;
  std::size_t N2 = 0;
  for (const Unit& u : pop.units) {
    if (!std::isfinite(u.y) || !std::isfinite(u.x))
      throw std::invalid_argument("compute_params: non-finite unit value");
    sum_y += u.y;
    sum_x += u.x;
    if (u.group == Group::NonRespondent) ++N2;
  }
  if (N2 == N)
    throw std::invalid_argument("compute_params: no respondents (N2 = N)");

  PopulationParams p;
  p.N = N;
  p.Ybar = sum_y / static_cast<double>(N);
  p.Xbar = sum_x / static_cast<double>(N);
  if (p.Xbar == 0.0)
    throw std::invalid_argument(
        "compute_params: Xbar = 0, ratio-type estimators undefined");

  double ss_y = 0.0, ss_x = 0.0, ss_xy = 0.0;
  double nr_sum = 0.0;
  for (const Unit& u : pop.units) {
    const double dy = u.y - p.Ybar;
    const double dx = u.x - p.Xbar;
    ss_y += dy * dy;
    ss_x += dx * dx;
    ss_xy += dy * dx;
    if (u.group == Group::NonRespondent) nr_sum += u.y;
  }
  if (N >= 2) {
    p.S2_Y = ss_y / static_cast<double>(N - 1);
    p.S2_X = ss_x / static_cast<double>(N - 1);
  }
  p.C_Y = std::sqrt(p.S2_Y) / std::abs(p.Ybar);
  p.C_X = std::sqrt(p.S2_X) / std::abs(p.Xbar);
  p.rho = (ss_y > 0.0 && ss_x > 0.0) ? ss_xy / std::sqrt(ss_y * ss_x) : 0.0;
  p.W2 = static_cast<double>(N2) / static_cast<double>(N);

  if (N2 >= 2) {
    const double m2 = nr_sum / static_cast<double>(N2);
    double ss2 = 0.0;
    for (const Unit& u : pop.units)
      if (u.group == Group::NonRespondent) ss2 += (u.y - m2) * (u.y - m2);
    p.S2_Y2 = ss2 / static_cast<double>(N2 - 1);
  }
  return p;
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// sample standard deviation, N-1 divisor
double sd_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// exact standardization: sample mean 0, sample variance 1
void standardize(std::vector<double>& v) {
  const double m = mean_of(v);
  for (double& x : v) x -= m;
  const double s = sd_of(v);
  for (double& x : v) x /= s;
}

struct GroupStats {
  double sum = 0.0;
  double sumsq = 0.0;
  std::size_t count = 0;

  double ssw() const {  // sum of squares about the group mean
    return sumsq - sum * sum / static_cast<double>(count);
  }
};

}  // namespace

FinitePopulation synthesize_population(const PopulationParams& target,
                                       std::uint64_t seed) {
  const std::size_t N = target.N;
  if (N < 4) throw std::invalid_argument("synthesize: target N must be >= 4");
  if (!(target.W2 >= 0.0 && target.W2 < 1.0))
    throw std::invalid_argument("synthesize: W2 must lie in [0, 1)");
  if (std::abs(target.rho) > 1.0)
    throw std::invalid_argument("synthesize: |rho| must be <= 1");
  if (target.S2_Y < 0.0 || target.S2_X < 0.0 || target.S2_Y2 < 0.0)
    throw std::invalid_argument("synthesize: mean squares must be >= 0");
  if (target.Xbar == 0.0)
    throw std::invalid_argument("synthesize: Xbar must be nonzero");
  if ((target.S2_Y == 0.0 || target.S2_X == 0.0) && target.rho != 0.0)
    throw std::invalid_argument(
        "synthesize: rho != 0 unattainable with a constant variable");

  const std::size_t N2 = round_half_up(target.W2 * static_cast<double>(N));
  if (N2 >= N)
    throw std::invalid_argument("synthesize: W2 leaves no respondents");
  if (N2 <= 1 && target.S2_Y2 > 0.0)
    throw std::invalid_argument(
        "synthesize: S2_Y2 > 0 needs at least two non-respondent units "
        "(W2 * N < 2)");

  const double r = target.S2_Y > 0.0 ? target.S2_Y2 / target.S2_Y : 0.0;
  if (N2 >= 2 &&
      r * static_cast<double>(N2 - 1) >= static_cast<double>(N - 1))
    throw std::invalid_argument(
        "synthesize: S2_Y2 / S2_Y exceeds the (N-1)/(N2-1) bound attainable "
        "by a group of that size");

  Rng rng = Rng::child(seed, 0);
  std::vector<double> z(N), w(N);
  for (double& v : z) v = rng.normal();
  for (double& v : w) v = rng.normal();
  standardize(z);

  // non-response assignment: random subset, then a greedy swap pass driving
  // the group/total variance ratio toward r so the exact rescale below stays
  // close to 1
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  for (std::size_t i = 0; i + 1 < N; ++i)
    std::swap(order[i], order[i + rng.below(N - i)]);
  std::vector<bool> nonresp(N, false);
  std::vector<std::size_t> nr_idx(order.begin(), order.begin() + N2);
  std::vector<std::size_t> r_idx(order.begin() + N2, order.end());
  for (std::size_t i : nr_idx) nonresp[i] = true;

  if (N2 >= 2 && nr_idx.size() * r_idx.size() <= 4'000'000) {
    const double total_ms =
        1.0;  // z is standardized, total mean square is exactly 1
    GroupStats g;
    for (std::size_t i : nr_idx) {
      g.sum += z[i];
      g.sumsq += z[i] * z[i];
    }
    g.count = N2;
    auto ratio_from = [&](double sum, double sumsq) {
      const double ssw = sumsq - sum * sum / static_cast<double>(N2);
      return ssw / static_cast<double>(N2 - 1) / total_ms;
    };
    double cur = ratio_from(g.sum, g.sumsq);
    for (std::size_t a = 0; a < nr_idx.size(); ++a) {
      double best_err = std::abs(cur - r);
      std::size_t best_b = r_idx.size();
      double best_ratio = cur;
      const double za = z[nr_idx[a]];
      for (std::size_t b = 0; b < r_idx.size(); ++b) {
        const double zb = z[r_idx[b]];
        const double ratio =
            ratio_from(g.sum - za + zb, g.sumsq - za * za + zb * zb);
        const double err = std::abs(ratio - r);
        if (err + 1e-15 < best_err) {
          best_err = err;
          best_b = b;
          best_ratio = ratio;
        }
      }
      if (best_b != r_idx.size()) {
        const double zb = z[r_idx[best_b]];
        g.sum += zb - za;
        g.sumsq += zb * zb - za * za;
        std::swap(nr_idx[a], r_idx[best_b]);
        cur = best_ratio;
      }
    }
    std::fill(nonresp.begin(), nonresp.end(), false);
    for (std::size_t i : nr_idx) nonresp[i] = true;
  }

  // rescale the group about its mean so that the group-to-total mean-square
  // ratio equals r exactly; the ratio is invariant under the global
  // restandardization that follows, so S2_Y2 lands on target with the totals
  if (N2 >= 2) {
    GroupStats g;
    for (std::size_t i : nr_idx) {
      g.sum += z[i];
      g.sumsq += z[i] * z[i];
    }
    g.count = N2;
    const double m = g.sum / static_cast<double>(N2);
    const double ssw = g.ssw();
    const double zbar = mean_of(z);
    double ss_tot = 0.0;
    for (double v : z) ss_tot += (v - zbar) * (v - zbar);
    // B: total sum of squares not contributed by within-group variation
    const double B = ss_tot - ssw;
    const double denom =
        ssw * (static_cast<double>(N - 1) - r * static_cast<double>(N2 - 1));
    if (!(denom > 0.0) || !(B > 0.0))
      throw std::invalid_argument(
          "synthesize: degenerate draw, group rescale not solvable");
    const double c =
        std::sqrt(r * static_cast<double>(N2 - 1) * B / denom);
    for (std::size_t i : nr_idx) z[i] = m + c * (z[i] - m);
    standardize(z);
  }

  // x-shape: exact-correlation mix of z with the orthogonalized second draw
  std::vector<double> xz(N);
  if (std::abs(target.rho) == 1.0 || target.S2_X == 0.0 ||
      target.S2_Y == 0.0) {
    for (std::size_t i = 0; i < N; ++i)
      xz[i] = (target.rho < 0.0 ? -z[i] : z[i]);
  } else {
    const double wm = mean_of(w);
    for (double& v : w) v -= wm;
    double zw = 0.0, zz = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      zw += z[i] * w[i];
      zz += z[i] * z[i];
    }
    for (std::size_t i = 0; i < N; ++i) w[i] -= zw / zz * z[i];
    const double wsd = sd_of(w);
    if (!(wsd > 0.0))
      throw std::invalid_argument(
          "synthesize: degenerate draw, auxiliary residual collapsed");
    const double rho = target.rho;
    const double mix = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < N; ++i) xz[i] = rho * z[i] + mix * w[i] / wsd;
  }

  const double sy = std::sqrt(target.S2_Y);
  const double sx = std::sqrt(target.S2_X);
  FinitePopulation pop;
  pop.units.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    pop.units[i].y = target.Ybar + sy * z[i];
    pop.units[i].x = target.Xbar + sx * xz[i];
    pop.units[i].group =
        nonresp[i] ? Group::NonRespondent : Group::Respondent;
  }
  return pop;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& field, const char* what,
                    std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size() || field.empty())
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": non-numeric " + what + " value '" + field +
                             "'");
  return v;
}

}  // namespace

FinitePopulation load_population(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  // header
  if (!std::getline(in, line)) throw std::runtime_error("no units");
  ++line_no;
  auto header = split_csv(line);
  std::ptrdiff_t col_y = -1, col_x = -1, col_g = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "y") col_y = static_cast<std::ptrdiff_t>(i);
    else if (header[i] == "x") col_x = static_cast<std::ptrdiff_t>(i);
    else if (header[i] == "group") col_g = static_cast<std::ptrdiff_t>(i);
    else
      throw std::runtime_error("line 1: unknown column '" + header[i] + "'");
  }
  if (col_y < 0 || col_x < 0)
    throw std::runtime_error("line 1: header must name columns y and x");

  FinitePopulation pop;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, got " +
                               std::to_string(fields.size()));
    Unit u;
    u.y = parse_number(fields[static_cast<std::size_t>(col_y)], "y", line_no);
    u.x = parse_number(fields[static_cast<std::size_t>(col_x)], "x", line_no);
    if (col_g >= 0) {
      const std::string& g = fields[static_cast<std::size_t>(col_g)];
      if (g == "R") u.group = Group::Respondent;
      else if (g == "NR") u.group = Group::NonRespondent;
      else
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": unknown group label '" + g +
                                 "' (expected R or NR)");
    }
    pop.units.push_back(u);
  }
  if (pop.units.empty()) throw std::runtime_error("no units");
  return pop;
}

}  // namespace nonresp
