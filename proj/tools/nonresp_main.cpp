// nonresp: survey-estimation CLI. Subcommands: params, table, simulate,
// estimate. See README for the file formats.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nonresp/montecarlo.hpp"
#include "nonresp/report.hpp"
#include "nonresp/scenario.hpp"
#include "nonresp/theory.hpp"

namespace {

using namespace nonresp;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;  // flag wins over the environment
  if (const char* env = std::getenv("NONRESP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("NONRESP_SEED is not an integer");
    }
  }
  return 0;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open --out file " + out_path);
  out << text;
}

FinitePopulation load_population_file(const std::string& path) {
  if (path == "-") return load_population(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open population file " + path);
  return load_population(in);
}

ScenarioSpec scenario_from(const std::string& preset_name,
                           const std::string& spec_path) {
  if (!preset_name.empty() && !spec_path.empty())
    throw std::invalid_argument("give either --preset or --spec, not both");
  if (!preset_name.empty()) return preset(preset_name);
  if (!spec_path.empty()) {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open spec file " + spec_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_json(ss.str());
  }
  throw std::invalid_argument("one of --preset or --spec is required");
}

// ---- estimate: pre-realized sample CSV (y,x,role) ----
DrawnSample load_sample_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open sample file " + path);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("sample: no rows");
  ++line_no;
  auto strip = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
  };
  if (strip(line) != "y,x,role")
    throw std::runtime_error("sample: header must be y,x,role");
  DrawnSample s;
  std::vector<double> ph1;
  bool has_ph1 = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string fy, fx, frole;
    std::getline(ls, fy, ',');
    std::getline(ls, fx, ',');
    std::getline(ls, frole, ',');
    double x = 0.0;
    try {
      x = std::stod(fx);
    } catch (const std::exception&) {
      throw std::runtime_error("sample line " + std::to_string(line_no) +
                               ": non-numeric x value '" + fx + "'");
    }
    auto need_y = [&]() {
      try {
        return std::stod(fy);
      } catch (const std::exception&) {
        throw std::runtime_error("sample line " + std::to_string(line_no) +
                                 ": non-numeric y value '" + fy + "'");
      }
    };
    if (frole == "R") {
      s.respondents.push_back({need_y(), x});
    } else if (frole == "NR_SUB") {
      s.nonresp_sub.push_back({need_y(), x});
    } else if (frole == "NR_X") {
      s.nonresp_x_only.push_back(x);
    } else if (frole == "PH1") {
      has_ph1 = true;
      ph1.push_back(x);
    } else {
      throw std::runtime_error("sample line " + std::to_string(line_no) +
                               ": unknown role '" + frole +
                               "' (expected R, NR_SUB, NR_X or PH1)");
    }
  }
  s.n1 = s.respondents.size();
  s.h2 = s.nonresp_sub.size();
  s.n2 = s.h2 + s.nonresp_x_only.size();
  if (s.n() == 0) throw std::runtime_error("sample: no rows");
  if (has_ph1) {
    // phase-one set = every sampled unit's x plus the phase-one-only rows
    std::vector<double> all;
    for (const XY& u : s.respondents) all.push_back(u.x);
    for (const XY& u : s.nonresp_sub) all.push_back(u.x);
    for (double x : s.nonresp_x_only) all.push_back(x);
    all.insert(all.end(), ph1.begin(), ph1.end());
    s.phase1_x = std::move(all);
  }
  return s;
}

int cmd_params(const std::string& input, OutputFormat fmt,
               const std::string& out) {
  const FinitePopulation pop = load_population_file(input);
  emit(render_params(compute_params(pop), fmt), out);
  return 0;
}

int cmd_table(ScenarioSpec spec, const std::vector<double>& w2_override,
              std::optional<double> k_override, OutputFormat fmt,
              const std::string& out) {
  if (!w2_override.empty()) spec.W2_values = w2_override;
  if (k_override) spec.design.k = *k_override;
  for (double w : spec.W2_values)
    if (w < 0.0 || w > 1.0)
      throw std::invalid_argument("--W2 values must lie in [0, 1]");
  emit(render_table(compute_pre_table(spec), fmt), out);
  return 0;
}

int cmd_simulate(ScenarioSpec spec, const std::vector<double>& w2_override,
                 std::optional<double> k_override, std::size_t R,
                 std::uint64_t seed, int threads, OutputFormat fmt,
                 const std::string& out) {
  if (R < 100) throw std::invalid_argument("--R must be >= 100");
  if (!w2_override.empty()) spec.W2_values = w2_override;
  if (k_override) spec.design.k = *k_override;

  const std::vector<EstimatorKind> kinds = {
      EstimatorKind::HHMean, EstimatorKind::Ratio, EstimatorKind::Regression,
      EstimatorKind::ClassEstimator};
  bool any_flag = false;
  std::vector<std::pair<double, SimulationReport>> runs;
  for (double w : spec.W2_values) {
    PopulationParams target = spec.params;
    target.W2 = w;
    const FinitePopulation pop = synthesize_population(target, seed);
    const PopulationParams truth = compute_params(pop);
    ClassChoice cls;
    cls.eta = spec.eta;
    cls.lambda = spec.lambda;
    SimulationReport rep =
        run_simulation(pop, spec.design, kinds, cls, R, seed, threads);
    rep = compare_theory(std::move(rep), truth, spec.design);
    for (const EstimatorResult& e : rep.estimators) any_flag |= e.flagged;
    runs.emplace_back(w, std::move(rep));
  }

  std::string text;
  if (fmt == OutputFormat::Json && runs.size() == 1) {
    text = render_report(runs[0].second, fmt);
  } else if (fmt == OutputFormat::Json) {
    text = "[\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
      std::ostringstream head;
      head << "{\"W2\": " << runs[i].first << ", \"report\": ";
      text += head.str() + render_report(runs[i].second, fmt);
      // render_report ends with a newline; splice the wrapper closer in
      text.erase(text.find_last_of('\n'));
      text += i + 1 < runs.size() ? "}\n,\n" : "}\n";
    }
    text += "]\n";
  } else {
    std::ostringstream os;
    for (const auto& [w, rep] : runs) {
      os << "W2 = " << w << "\n" << render_report(rep, fmt) << "\n";
    }
    text = os.str();
  }
  emit(text, out);
  return any_flag ? 1 : 0;
}

int cmd_estimate(const std::string& pop_path, const std::string& sample_path,
                 std::optional<std::size_t> n, std::optional<std::size_t> np,
                 double k, std::uint64_t seed,
                 std::vector<std::string> estimators,
                 std::optional<double> Xbar, const ClassParams& cp,
                 OutputFormat fmt, const std::string& out) {
  DrawnSample s;
  if (!sample_path.empty()) {
    s = load_sample_file(sample_path);
  } else {
    if (pop_path.empty())
      throw std::invalid_argument(
          "estimate needs --population (with --n) or --sample");
    if (!n) throw std::invalid_argument("--n is required with --population");
    const FinitePopulation pop = load_population_file(pop_path);
    Design d;
    if (np)
      d.phase = TwoPhase{*np, *n};
    else
      d.phase = SinglePhase{*n};
    d.k = k;
    Rng rng = Rng::child(seed, 0);
    s = realize(d, pop, rng);
  }
  const bool two_phase = s.phase1_x.has_value();

  if (estimators.empty()) estimators = {"hh"};
  if (estimators.size() == 1 && estimators[0] == "all")
    estimators = {"hh", "ratio", "regression", "class"};

  auto need_xbar = [&]() {
    if (!Xbar)
      throw std::invalid_argument(
          "population mean of auxiliary variable required (--Xbar)");
    return *Xbar;
  };

  std::ostringstream os;
  std::vector<std::pair<std::string, double>> values;
  for (const std::string& name : estimators) {
    const bool wants_2p = name.size() > 3 && name.ends_with("_2p");
    if (wants_2p && !two_phase)
      throw std::invalid_argument("estimator " + name +
                                  " needs a two-phase design (--n-prime)");
    const std::string base = wants_2p ? name.substr(0, name.size() - 3) : name;
    double v = 0.0;
    if (base == "hh") {
      v = hh_mean(s);
    } else if (base == "ratio") {
      v = two_phase ? ratio_estimate_2p(s) : ratio_estimate(s, need_xbar());
    } else if (base == "regression") {
      v = two_phase ? regression_estimate_2p(s)
                    : regression_estimate(s, need_xbar());
    } else if (base == "class") {
      v = two_phase ? class_estimate_2p(s, cp)
                    : class_estimate(s, need_xbar(), cp);
    } else {
      throw std::invalid_argument(
          "unknown estimator '" + name +
          "' (expected hh, ratio, regression, class or all)");
    }
    values.emplace_back(name, v);
  }

  if (fmt == OutputFormat::Json) {
    std::ostringstream js;
    js << "{\n  \"n1\": " << s.n1 << ",\n  \"n2\": " << s.n2
       << ",\n  \"h2\": " << s.h2 << ",\n  \"estimates\": {";
    for (std::size_t i = 0; i < values.size(); ++i)
      js << (i ? ", " : "") << '"' << values[i].first
         << "\": " << std::setprecision(17) << values[i].second;
    js << "}\n}\n";
    emit(js.str(), out);
    return 0;
  }
  if (fmt == OutputFormat::Csv) {
    os << "estimator,value\n";
    for (const auto& [name, v] : values)
      os << name << ',' << std::setprecision(17) << v << "\n";
    os << "n1," << s.n1 << "\nn2," << s.n2 << "\nh2," << s.h2 << "\n";
    emit(os.str(), out);
    return 0;
  }
  os << "sample: n1=" << s.n1 << " n2=" << s.n2 << " h2=" << s.h2;
  if (two_phase) os << " n'=" << s.phase1_x->size();
  os << "\n";
  for (const auto& [name, v] : values)
    os << std::left << std::setw(14) << name << std::setprecision(10) << v
       << "\n";
  emit(os.str(), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-population mean estimation under non-response: "
               "Hansen-Hurwitz sub-sampling, ratio/regression/class "
               "estimators, closed-form efficiency tables and Monte Carlo "
               "validation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format = "text";
  std::string out_path;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--format", format, "Output format: text, csv or json")
      ->capture_default_str();
  app.add_option("--out", out_path, "Write output to a file");
  app.add_option("--seed", seed_flag,
                 "Master seed (overrides NONRESP_SEED; default 0)");

  // params
  auto* c_params = app.add_subcommand(
      "params", "Compute population parameters from a population CSV");
  std::string input = "-";
  c_params->add_option("--input,-i", input,
                       "Population CSV path ('-' for stdin)");

  // table
  auto* c_table = app.add_subcommand(
      "table", "Render the PRE table of a scenario (ratio, regression and "
               "optimum class vs the Hansen-Hurwitz mean)");
  std::string preset_name, spec_path;
  std::vector<double> w2_list;
  std::optional<double> k_override;
  c_table->add_option("--preset", preset_name,
                      "Built-in scenario: table1, table2 or table3");
  c_table->add_option("--spec", spec_path, "Scenario spec JSON path");
  c_table->add_option("--W2", w2_list, "Non-response rates (rows)");
  c_table->add_option("--k", k_override, "Sub-sampling factor override");

  // simulate
  auto* c_sim = app.add_subcommand(
      "simulate", "Synthesize a population per W2 and run a replicated "
                  "simulation against the closed-form values");
  std::string sim_preset, sim_spec;
  std::vector<double> sim_w2;
  std::optional<double> sim_k;
  std::size_t R = 10000;
  int threads = 1;
  c_sim->add_option("--preset", sim_preset,
                    "Built-in scenario: table1, table2 or table3");
  c_sim->add_option("--spec", sim_spec, "Scenario spec JSON path");
  c_sim->add_option("--W2", sim_w2, "Non-response rates (one run each)");
  c_sim->add_option("--k", sim_k, "Sub-sampling factor override");
  c_sim->add_option("--R", R, "Replications (>= 100)")
      ->capture_default_str();
  c_sim->add_option("--threads", threads, "Worker threads")
      ->capture_default_str();

  // estimate
  auto* c_est = app.add_subcommand(
      "estimate", "Estimate the population mean from data: draw one seeded "
                  "realization of a design, or read a pre-realized sample");
  std::string pop_path, sample_path;
  std::optional<std::size_t> est_n, est_np;
  double est_k = 1.0;
  std::vector<std::string> est_list;
  std::optional<double> Xbar;
  ClassParams cp;
  c_est->add_option("--population", pop_path, "Population CSV path");
  c_est->add_option("--sample", sample_path,
                    "Pre-realized sample CSV (y,x,role)");
  c_est->add_option("--n", est_n, "Sample size");
  c_est->add_option("--n-prime", est_np,
                    "Phase-one size (makes the design two-phase)");
  c_est->add_option("--k", est_k, "Sub-sampling factor")
      ->capture_default_str();
  c_est->add_option("--estimator", est_list,
                    "hh, ratio, regression, class, or all (repeatable)");
  c_est->add_option("--Xbar", Xbar,
                    "Known population mean of x (single-phase ratio-type)");
  c_est->add_option("--alpha1", cp.alpha1, "Class constant alpha1")
      ->capture_default_str();
  c_est->add_option("--alpha2", cp.alpha2, "Class constant alpha2")
      ->capture_default_str();
  c_est->add_option("--eta", cp.eta, "Class shape eta")
      ->capture_default_str();
  c_est->add_option("--lambda", cp.lambda, "Class shape lambda")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const OutputFormat fmt = parse_format(format);
    const std::uint64_t seed = resolve_seed(seed_flag);
    if (c_params->parsed()) return cmd_params(input, fmt, out_path);
    if (c_table->parsed())
      return cmd_table(scenario_from(preset_name, spec_path), w2_list,
                       k_override, fmt, out_path);
    if (c_sim->parsed())
      return cmd_simulate(scenario_from(sim_preset, sim_spec), sim_w2, sim_k,
                          R, seed, threads, fmt, out_path);
    if (c_est->parsed())
      return cmd_estimate(pop_path, sample_path, est_n, est_np, est_k, seed,
                          est_list, Xbar, cp, fmt, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
