// End-to-end checks of the installed CLI surface, driven through the real
// binary (path injected by CMake).

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "test_support.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_with_env(const std::string& env_prefix,
                       const std::string& args) {
  const std::string cmd =
      env_prefix + std::string(NONRESP_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run_cli(const std::string& args) { return run_with_env("", args); }

std::string write_file(const std::string& stem, const std::string& content) {
  const std::string path = nonresp::test::temp_file(stem);
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("help screens") {
  CHECK(run_cli("--help").output.find("params") != std::string::npos);
  CHECK(run_cli("table --help").output.find("--preset") != std::string::npos);
  CHECK(run_cli("simulate --help").exit_code == 0);
  CHECK(run_cli("estimate --help").exit_code == 0);
}

TEST_CASE("table presets render and agree with the published rows") {
  auto r = run_cli("table --preset table1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("126.73797") != std::string::npos);
  CHECK(r.output.find("788.37671") != std::string::npos);
  r = run_cli("table --preset table2 --format csv");
  CHECK(r.output.find("125.48657") != std::string::npos);
  r = run_cli("--format json table --preset table3");
  CHECK(r.output.find("\"footnotes\"") != std::string::npos);
  CHECK(run_cli("table --preset nope").exit_code == 2);
  CHECK(run_cli("table").exit_code == 2);
}

TEST_CASE("params command computes and formats") {
  const auto path = write_file("pop_params.csv",
                               "y,x,group\n1,1,R\n2,2,R\n3,3,NR\n4,4,NR\n");
  auto r = run_cli("params --input " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("W2") != std::string::npos);
  r = run_cli("--format json params --input " + path);
  CHECK(r.output.find("\"rho\": 1.0") != std::string::npos);
  CHECK(run_cli("params --input /nonexistent.csv").exit_code == 2);
}

TEST_CASE("estimate: census hh equals the population mean exactly") {
  const auto path = write_file(
      "pop_est.csv", "y,x\n1,2\n2,4\n3,6\n4,8\n10,1\n");  // mean y = 4
  const auto r =
      run_cli("estimate --population " + path + " --n 5 --estimator hh");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("hh") != std::string::npos);
  CHECK(r.output.find("4") != std::string::npos);
  CHECK(r.output.find("n1=5 n2=0 h2=0") != std::string::npos);
}

TEST_CASE("estimate validation errors") {
  const auto path = write_file("pop_val.csv", "y,x\n1,2\n2,4\n3,6\n4,8\n");
  // single-phase ratio without Xbar
  auto r = run_cli("estimate --population " + path +
                   " --n 3 --estimator ratio --seed 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("population mean of auxiliary variable required") !=
        std::string::npos);
  // two-phase estimator on a single-phase draw
  r = run_cli("estimate --population " + path +
              " --n 3 --estimator ratio_2p --Xbar 5 --seed 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("two-phase") != std::string::npos);
  // with --n-prime it works
  r = run_cli("estimate --population " + path +
              " --n 2 --n-prime 3 --estimator ratio_2p --seed 1");
  CHECK(r.exit_code == 0);
}

TEST_CASE("estimate from a pre-realized sample file") {
  const auto path = write_file("sample.csv",
                               "y,x,role\n"
                               "1,1,R\n2,1,R\n3,1,R\n"
                               "5,1,NR_SUB\n5,1,NR_SUB\n");
  const auto r = run_cli("estimate --sample " + path + " --estimator hh");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("3.2") != std::string::npos);
  CHECK(r.output.find("n1=3 n2=2 h2=2") != std::string::npos);
}

TEST_CASE("simulate: tame spec runs clear, R is validated, seeds matter") {
  const std::string spec = R"({
    "params": {"N": 120, "Ybar": 100.0, "Xbar": 40.0, "C_Y": 0.2, "C_X": 0.2,
               "rho": 0.7, "S2_Y2_ratio": 0.75},
    "design": {"phase": "single", "n": 30, "k": 1.5},
    "W2_values": [0.2]
  })";
  const auto path = write_file("spec_tame.json", spec);

  auto r = run_cli("simulate --spec " + path + " --R 10");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("--R must be >= 100") != std::string::npos);

  r = run_cli("--seed 7 simulate --spec " + path + " --R 2000");
  CHECK(r.exit_code == 0);  // all flags clear on a tame population
  CHECK(r.output.find("hh") != std::string::npos);

  // byte-identical output across thread counts, and the seed flag wins
  const auto j1 =
      run_cli("--seed 7 simulate --spec " + path + " --R 2000 --threads 1 --format json");
  const auto j8 =
      run_cli("--seed 7 simulate --spec " + path + " --R 2000 --threads 8 --format json");
  CHECK(j1.output == j8.output);
  const auto j2 = run_cli("--seed 8 simulate --spec " + path +
                          " --R 2000 --format json");
  CHECK(j1.output != j2.output);
}

TEST_CASE("NONRESP_SEED is honored and the flag overrides it") {
  const std::string spec = R"({
    "params": {"N": 80, "Ybar": 50.0, "Xbar": 20.0, "C_Y": 0.25, "C_X": 0.2,
               "rho": 0.6, "S2_Y2_ratio": 0.8},
    "design": {"phase": "single", "n": 20, "k": 1.5},
    "W2_values": [0.2]
  })";
  const auto path = write_file("spec_seed.json", spec);
  const std::string args = "--format json simulate --spec " + path + " --R 500";

  const auto plain = run_cli(args);                       // master seed 0
  const auto flag0 = run_cli("--seed 0 " + args);         // explicit 0
  const auto env9 = run_with_env("NONRESP_SEED=9 ", args);
  const auto flag9 = run_cli("--seed 9 " + args);
  const auto env_beats_nothing = run_with_env("NONRESP_SEED=9 ", args);
  const auto flag_beats_env =
      run_with_env("NONRESP_SEED=9 ", "--seed 0 " + args);

  CHECK(plain.output == flag0.output);
  CHECK(env9.output == flag9.output);
  CHECK(env9.output == env_beats_nothing.output);
  CHECK(env9.output != plain.output);
  CHECK(flag_beats_env.output == plain.output);
}

TEST_CASE("--out writes the report to a file") {
  const auto out = nonresp::test::temp_file("table_out.csv");
  const auto r =
      run_cli("--format csv --out " + out + " table --preset table1");
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  CHECK(first == "W2,ratio,regression,class_opt");
}
