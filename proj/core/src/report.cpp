#include "nonresp/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nonresp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed5(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(5) << v;
  return os.str();
}

std::string fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string design_text(const Design& d) {
  std::ostringstream os;
  if (d.two_phase())
    os << "two-phase(n'=" << d.n_prime() << ", n=" << d.n() << ")";
  else
    os << "single-phase(n=" << d.n() << ")";
  os << " k=" << d.k;
  if (d.bernoulli_p) os << " bernoulli_p=" << *d.bernoulli_p;
  return os.str();
}

ordered_json design_json(const Design& d) {
  ordered_json j;
  j["phase"] = d.two_phase() ? "two_phase" : "single";
  if (d.two_phase()) j["n_prime"] = d.n_prime();
  j["n"] = d.n();
  j["k"] = d.k;
  if (d.bernoulli_p) j["bernoulli_p"] = *d.bernoulli_p;
  return j;
}

Design design_from_json(const ordered_json& j) {
  Design d;
  const std::string phase = j.at("phase").get<std::string>();
  if (phase == "two_phase")
    d.phase = TwoPhase{j.at("n_prime").get<std::size_t>(),
                       j.at("n").get<std::size_t>()};
  else
    d.phase = SinglePhase{j.at("n").get<std::size_t>()};
  d.k = j.at("k").get<double>();
  if (j.contains("bernoulli_p"))
    d.bernoulli_p = j.at("bernoulli_p").get<double>();
  return d;
}

const char* kTableColumns[3] = {"ratio", "regression", "class_opt"};

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + name +
                              "' (expected text, csv or json)");
}

std::string render_table(const PreTable& table, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered_json j;
    j["scenario"] = table.scenario;
    j["two_phase"] = table.two_phase;
    j["baseline"] = "hh";
    j["rows"] = ordered_json::array();
    for (const PreRow& r : table.rows) {
      ordered_json row;
      row["W2"] = r.W2;
      row["ratio"] = r.pre_ratio;
      row["regression"] = r.pre_regression;
      row["class_opt"] = r.pre_class_opt;
      j["rows"].push_back(row);
    }
    if (!table.footnotes.empty()) {
      j["footnotes"] = table.footnotes;
      j["marks"] = ordered_json::array();
      for (const CellNote& m : table.marks)
        j["marks"].push_back({{"row", m.row},
                              {"column", kTableColumns[m.column]},
                              {"footnote", m.footnote}});
    }
    return j.dump(2) + "\n";
  }

  auto mark_of = [&](std::size_t row, int col) -> std::string {
    for (const CellNote& m : table.marks)
      if (m.row == row && m.column == col)
        return std::string(1, static_cast<char>('a' + m.footnote));
    return "";
  };

  std::ostringstream os;
  if (fmt == OutputFormat::Csv) {
    os << "W2,ratio,regression,class_opt\n";
    for (const PreRow& r : table.rows)
      os << r.W2 << ',' << fixed5(r.pre_ratio) << ','
         << fixed5(r.pre_regression) << ',' << fixed5(r.pre_class_opt)
         << '\n';
    return os.str();
  }

  os << "PRE vs the Hansen-Hurwitz mean  [scenario " << table.scenario
     << ", " << (table.two_phase ? "two-phase" : "single-phase") << "]\n\n";
  os << std::setw(6) << "W2" << std::setw(14) << "ratio" << std::setw(14)
     << "regression" << std::setw(14) << "class_opt" << "\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const PreRow& r = table.rows[i];
    os << std::setw(6) << r.W2;
    const double cells[3] = {r.pre_ratio, r.pre_regression, r.pre_class_opt};
    for (int c = 0; c < 3; ++c) {
      std::string cell = fixed5(cells[c]) + mark_of(i, c);
      os << std::setw(14) << cell;
    }
    os << "\n";
  }
  for (std::size_t f = 0; f < table.footnotes.size(); ++f)
    os << "\n" << static_cast<char>('a' + f) << ": " << table.footnotes[f];
  if (!table.footnotes.empty()) os << "\n";
  return os.str();
}

std::string render_report(const SimulationReport& report, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered_json j;
    j["meta"] = {{"R", report.meta.R},
                 {"seed", report.meta.seed},
                 {"design", design_json(report.meta.design)},
                 {"degenerate_count", report.meta.degenerate_count}};
    j["estimators"] = ordered_json::array();
    for (const EstimatorResult& e : report.estimators) {
      ordered_json row;
      row["label"] = e.label;
      row["failed"] = e.failed;
      row["used"] = e.used;
      if (!e.failed) {
        row["empirical_mean"] = e.empirical_mean;
        row["empirical_bias"] = e.empirical_bias;
        row["empirical_mse"] = e.empirical_mse;
        row["mse_standard_error"] = e.mse_standard_error;
        row["theoretical_value"] =
            e.theoretical_value ? ordered_json(*e.theoretical_value)
                                : ordered_json(nullptr);
        row["z_score"] =
            e.z_score ? ordered_json(*e.z_score) : ordered_json(nullptr);
        row["first_order"] = e.first_order;
        row["flagged"] = e.flagged;
      }
      if (e.class_params)
        row["class_params"] = {{"alpha1", e.class_params->alpha1},
                               {"alpha2", e.class_params->alpha2},
                               {"eta", e.class_params->eta},
                               {"lambda", e.class_params->lambda}};
      j["estimators"].push_back(row);
    }
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  if (fmt == OutputFormat::Csv) {
    os << "label,used,empirical_mean,empirical_bias,empirical_mse,"
          "mse_standard_error,theoretical_value,z_score,flagged,failed\n";
    for (const EstimatorResult& e : report.estimators) {
      os << e.label << ',' << e.used << ',';
      if (e.failed) {
        os << ",,,,,,," << "true\n";
        continue;
      }
      os << e.empirical_mean << ',' << e.empirical_bias << ','
         << e.empirical_mse << ',' << e.mse_standard_error << ',';
      if (e.theoretical_value) os << *e.theoretical_value;
      os << ',';
      if (e.z_score) os << *e.z_score;
      os << ',' << (e.flagged ? "true" : "false") << ",false\n";
    }
    return os.str();
  }

  os << "simulation: R=" << report.meta.R << " seed=" << report.meta.seed
     << " design=" << design_text(report.meta.design)
     << " degenerate=" << report.meta.degenerate_count << "\n\n";
  os << std::left << std::setw(14) << "estimator" << std::right
     << std::setw(8) << "used" << std::setw(15) << "mean" << std::setw(15)
     << "bias" << std::setw(16) << "mse" << std::setw(14) << "se"
     << std::setw(16) << "theory" << std::setw(9) << "z" << "  flag\n";
  for (const EstimatorResult& e : report.estimators) {
    os << std::left << std::setw(14) << e.label << std::right;
    if (e.failed) {
      os << std::setw(8) << 0 << "  all replications degenerate\n";
      continue;
    }
    os << std::setw(8) << e.used << std::setw(15) << fixed5(e.empirical_mean)
       << std::setw(15) << fixed5(e.empirical_bias) << std::setw(16)
       << fixed5(e.empirical_mse) << std::setw(14)
       << fixed5(e.mse_standard_error);
    if (e.theoretical_value)
      os << std::setw(16) << fixed5(*e.theoretical_value);
    else
      os << std::setw(16) << "n/a";
    if (e.z_score)
      os << std::setw(9) << fixed2(*e.z_score);
    else
      os << std::setw(9) << "n/a";
    os << (e.flagged ? "  *" : "") << "\n";
  }
  return os.str();
}

SimulationReport parse_report_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  SimulationReport report;
  const ordered_json& meta = j.at("meta");
  report.meta.R = meta.at("R").get<std::size_t>();
  report.meta.seed = meta.at("seed").get<std::uint64_t>();
  report.meta.design = design_from_json(meta.at("design"));
  report.meta.degenerate_count =
      meta.at("degenerate_count").get<std::size_t>();
  for (const ordered_json& row : j.at("estimators")) {
    EstimatorResult e;
    e.label = row.at("label").get<std::string>();
    e.failed = row.at("failed").get<bool>();
    e.used = row.at("used").get<std::size_t>();
    if (!e.failed) {
      e.empirical_mean = row.at("empirical_mean").get<double>();
      e.empirical_bias = row.at("empirical_bias").get<double>();
      e.empirical_mse = row.at("empirical_mse").get<double>();
      e.mse_standard_error = row.at("mse_standard_error").get<double>();
      if (!row.at("theoretical_value").is_null())
        e.theoretical_value = row.at("theoretical_value").get<double>();
      if (!row.at("z_score").is_null())
        e.z_score = row.at("z_score").get<double>();
      e.first_order = row.at("first_order").get<bool>();
      e.flagged = row.at("flagged").get<bool>();
    }
    if (row.contains("class_params")) {
      const ordered_json& cp = row.at("class_params");
      e.class_params = ClassParams{
          cp.at("alpha1").get<double>(), cp.at("alpha2").get<double>(),
          cp.at("eta").get<double>(), cp.at("lambda").get<double>()};
    }
    report.estimators.push_back(std::move(e));
  }
  return report;
}

std::string render_params(const PopulationParams& p, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered_json j;
    j["N"] = p.N;
    j["Ybar"] = p.Ybar;
    j["Xbar"] = p.Xbar;
    j["S2_Y"] = p.S2_Y;
    j["S2_X"] = p.S2_X;
    j["C_Y"] = p.C_Y;
    j["C_X"] = p.C_X;
    j["rho"] = p.rho;
    j["W2"] = p.W2;
    j["S2_Y2"] = p.S2_Y2;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  const std::pair<const char*, double> fields[] = {
      {"Ybar", p.Ybar}, {"Xbar", p.Xbar},   {"S2_Y", p.S2_Y},
      {"S2_X", p.S2_X}, {"C_Y", p.C_Y},     {"C_X", p.C_X},
      {"rho", p.rho},   {"W2", p.W2},       {"S2_Y2", p.S2_Y2}};
  if (fmt == OutputFormat::Csv) {
    os << "parameter,value\n";
    os << "N," << p.N << "\n";
    for (const auto& [name, value] : fields) os << name << ',' << value << "\n";
    return os.str();
  }
  os << std::left << std::setw(8) << "N" << p.N << "\n";
  for (const auto& [name, value] : fields)
    os << std::left << std::setw(8) << name << std::setprecision(10) << value
       << "\n";
  return os.str();
}

}  // namespace nonresp
