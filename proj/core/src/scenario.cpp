#include "nonresp/scenario.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "nonresp/theory.hpp"

namespace nonresp {

namespace {

using nlohmann::json;

PopulationParams fill_cv(PopulationParams p) {
  p.C_Y = std::sqrt(p.S2_Y) / std::abs(p.Ybar);
  p.C_X = std::sqrt(p.S2_X) / std::abs(p.Xbar);
  return p;
}

}  // namespace

ScenarioSpec preset(const std::string& name) {
  ScenarioSpec s;
  s.name = name;
  if (name == "table1") {
    PopulationParams p;
    p.N = 200;
    p.Ybar = 500.0;
    p.Xbar = 25.0;
    p.C_Y = 15.0;
    p.C_X = 2.0;
    p.S2_Y = (15.0 * 500.0) * (15.0 * 500.0);
    p.S2_X = (2.0 * 25.0) * (2.0 * 25.0);
    p.rho = 0.90;
    p.S2_Y2 = 0.8 * p.S2_Y;
    s.params = p;
    s.design.phase = SinglePhase{50};
    s.design.k = 1.5;
  } else if (name == "table2") {
    PopulationParams p;
    p.N = 70;
    p.Ybar = 981.29;
    p.Xbar = 1755.53;
    p.S2_Y = 613.66 * 613.66;
    p.S2_X = 1406.13 * 1406.13;
    p.rho = 0.778;
    p.S2_Y2 = 244.11 * 244.11;
    s.params = fill_cv(p);
    s.design.phase = TwoPhase{40, 25};
    s.design.k = 1.5;
  } else if (name == "table3") {
    PopulationParams p;
    p.N = 95;
    p.Ybar = 19.4968;
    p.Xbar = 55.8611;
    p.S2_Y = 3.0435 * 3.0435;
    p.S2_X = 3.2735 * 3.2735;
    p.rho = 0.8460;
    p.S2_Y2 = 2.3552 * 2.3552;
    s.params = fill_cv(p);
    s.design.phase = TwoPhase{70, 35};
    s.design.k = 1.5;
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected table1, table2 or table3)");
  }
  return s;
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("spec: unknown key '" + it.key() +
                                  "' in " + where);
}

double need_number(const json& obj, const std::string& key,
                   const std::string& where) {
  if (!obj.contains(key))
    throw std::invalid_argument("spec: missing key '" + key + "' in " +
                                where);
  if (!obj[key].is_number())
    throw std::invalid_argument("spec: key '" + key + "' in " + where +
                                " must be a number");
  return obj[key].get<double>();
}

}  // namespace

ScenarioSpec parse_spec_json(const std::string& text) {
  json root = json::parse(text);  // throws nlohmann parse_error on bad JSON
  if (!root.is_object())
    throw std::invalid_argument("spec: top level must be an object");
  check_keys(root, {"params", "design", "class_shape", "W2_values"},
             "the top level");

  ScenarioSpec s;

  if (!root.contains("params"))
    throw std::invalid_argument("spec: missing key 'params'");
  const json& jp = root["params"];
  check_keys(jp,
             {"N", "Ybar", "Xbar", "S2_Y", "C_Y", "S2_X", "C_X", "rho",
              "S2_Y2", "S2_Y2_ratio"},
             "params");
  PopulationParams p;
  p.N = static_cast<std::size_t>(need_number(jp, "N", "params"));
  p.Ybar = need_number(jp, "Ybar", "params");
  p.Xbar = need_number(jp, "Xbar", "params");
  if (p.Xbar == 0.0)
    throw std::invalid_argument("spec: params.Xbar must be nonzero");

  if (jp.contains("S2_Y") == jp.contains("C_Y"))
    throw std::invalid_argument(
        "spec: params needs exactly one of S2_Y or C_Y");
  p.S2_Y = jp.contains("S2_Y")
               ? need_number(jp, "S2_Y", "params")
               : std::pow(need_number(jp, "C_Y", "params") * p.Ybar, 2);
  if (jp.contains("S2_X") == jp.contains("C_X"))
    throw std::invalid_argument(
        "spec: params needs exactly one of S2_X or C_X");
  p.S2_X = jp.contains("S2_X")
               ? need_number(jp, "S2_X", "params")
               : std::pow(need_number(jp, "C_X", "params") * p.Xbar, 2);
  p.rho = need_number(jp, "rho", "params");
  if (std::abs(p.rho) > 1.0)
    throw std::invalid_argument("spec: params.rho must lie in [-1, 1]");
  if (jp.contains("S2_Y2") == jp.contains("S2_Y2_ratio"))
    throw std::invalid_argument(
        "spec: params needs exactly one of S2_Y2 or S2_Y2_ratio");
  p.S2_Y2 = jp.contains("S2_Y2")
                ? need_number(jp, "S2_Y2", "params")
                : need_number(jp, "S2_Y2_ratio", "params") * p.S2_Y;
  s.params = fill_cv(p);

  if (!root.contains("design"))
    throw std::invalid_argument("spec: missing key 'design'");
  const json& jd = root["design"];
  check_keys(jd, {"phase", "n", "n_prime", "k", "bernoulli_p"}, "design");
  const std::string phase =
      jd.contains("phase") ? jd["phase"].get<std::string>() : "single";
  const auto n = static_cast<std::size_t>(need_number(jd, "n", "design"));
  if (phase == "single") {
    if (jd.contains("n_prime"))
      throw std::invalid_argument(
          "spec: design.n_prime is only valid for phase = two_phase");
    s.design.phase = SinglePhase{n};
  } else if (phase == "two_phase") {
    s.design.phase = TwoPhase{
        static_cast<std::size_t>(need_number(jd, "n_prime", "design")), n};
  } else {
    throw std::invalid_argument(
        "spec: design.phase must be 'single' or 'two_phase'");
  }
  s.design.k = jd.contains("k") ? need_number(jd, "k", "design") : 1.0;
  if (jd.contains("bernoulli_p"))
    s.design.bernoulli_p = need_number(jd, "bernoulli_p", "design");
  s.design.validate_for(s.params.N);

  if (root.contains("class_shape")) {
    const json& jc = root["class_shape"];
    check_keys(jc, {"eta", "lambda"}, "class_shape");
    s.eta = need_number(jc, "eta", "class_shape");
    s.lambda = need_number(jc, "lambda", "class_shape");
    if (s.eta == 0.0)
      throw std::invalid_argument("spec: class_shape.eta must be nonzero");
    if (s.eta * s.params.Xbar + s.lambda == 0.0)
      throw std::invalid_argument(
          "spec: class_shape puts the estimator pole at Xbar");
  }

  if (root.contains("W2_values")) {
    if (!root["W2_values"].is_array() || root["W2_values"].empty())
      throw std::invalid_argument("spec: W2_values must be a nonempty array");
    s.W2_values.clear();
    for (const json& v : root["W2_values"]) {
      if (!v.is_number())
        throw std::invalid_argument("spec: W2_values entries must be numbers");
      const double w = v.get<double>();
      if (w < 0.0 || w > 1.0)
        throw std::invalid_argument("spec: W2_values must lie in [0, 1]");
      s.W2_values.push_back(w);
    }
  }
  return s;
}

PreTable compute_pre_table(const ScenarioSpec& spec) {
  PreTable out;
  out.scenario = spec.name;
  out.two_phase = spec.design.two_phase();
  const std::size_t n = spec.design.n();
  const std::size_t n_prime = spec.design.n_prime();
  const double k = spec.design.k;

  for (double w : spec.W2_values) {
    PopulationParams p = spec.params;
    p.W2 = w;
    const double base = var_hh(p, n, k).value;
    PreRow row;
    row.W2 = w;
    if (out.two_phase) {
      row.pre_ratio = pre(mse_ratio_2p(p, n_prime, n, k).value, base);
      row.pre_regression =
          pre(mse_regression_2p(p, n_prime, n, k).value, base);
      row.pre_class_opt = pre(min_mse_class_2p(p, n_prime, n, k), base);
    } else {
      row.pre_ratio = pre(mse_ratio(p, n, k).value, base);
      row.pre_regression = pre(mse_regression(p, n, k).value, base);
      row.pre_class_opt = pre(min_mse_class(p, n, k), base);
    }
    out.rows.push_back(row);
  }

  if (spec.name == "table3") {
    out.footnotes = {
        "computed optimum differs from the published reference value, which "
        "repeats the regression cell; the computed value preserves row "
        "monotonicity",
        "published reference value for this cell is sensitive to input "
        "rounding"};
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      if (out.rows[i].W2 == 0.4) out.marks.push_back({i, 2, 0});
      if (out.rows[i].W2 == 0.1) out.marks.push_back({i, 1, 1});
    }
  }
  return out;
}

}  // namespace nonresp
