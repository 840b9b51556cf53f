#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef HQMC_CLI_PATH
#error "HQMC_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

int run_count = 0;

RunResult run(const std::string& args) {
  const std::string out_path = "/tmp/hqmc_cli_test_" + std::to_string(run_count++) + ".out";
  const std::string cmd =
      std::string(HQMC_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out_path);
  std::stringstream ss;
  ss << is.rdbuf();
  r.output = ss.str();
  std::remove(out_path.c_str());
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/hqmc_cli_test_" + name;
  std::ofstream os(path);
  os << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kMinimalConfig =
    "b=2\n"
    "m=2\n"
    "s1=1\n"
    "s2=1\n"
    "alpha1=2\n"
    "alpha2=2\n"
    "gamma1=const:1\n"
    "gamma2=const:1\n";

}  // namespace

TEST_CASE("construct writes the expected minimal rule") {
  const std::string cfg = write_temp("min.cfg", kMinimalConfig);
  const std::string rule = "/tmp/hqmc_cli_test_min.rule";
  const std::string trace = "/tmp/hqmc_cli_test_min.trace";
  const RunResult r =
      run("construct --config " + cfg + " --rule_out " + rule + " --trace_out " + trace);
  CHECK(r.exit_code == 0);
  const std::string rtext = slurp(rule);
  CHECK(rtext == "b=2\nm=2\nf=111\ng=1\nz=1\n");
  CHECK(slurp(trace).rfind("step,d1,d2,kind,choice,e2,thm3_bound\n", 0) == 0);
}

TEST_CASE("construct rejects an m range") {
  const std::string cfg = write_temp("range.cfg", std::string(kMinimalConfig) + "m=1..3\n");
  const RunResult r = run("construct --config " + cfg);
  CHECK(r.exit_code == 1);
}

TEST_CASE("construct runs are byte-identical, with and without parallel scan") {
  const std::string cfg = write_temp(
      "det.cfg", "b=2\nm=5\ns1=3\ns2=3\nalpha1=2\nalpha2=2\ngamma1=power:1,2\ngamma2=power:1,2\n");
  const RunResult serial = run("construct --config " + cfg);
  const RunResult parallel = run("construct --config " + cfg + " --parallel 1 --threads 3");
  CHECK(serial.exit_code == 0);
  CHECK(serial.output == parallel.output);
}

TEST_CASE("error reports a sandwiched e2 and round-trips the rule file") {
  const std::string cfg = write_temp("err.cfg", kMinimalConfig);
  const std::string rule = "/tmp/hqmc_cli_test_err.rule";
  CHECK(run("construct --config " + cfg + " --rule_out " + rule + " --trace_out /dev/null")
            .exit_code == 0);
  const RunResult r = run("error --config " + cfg + " --rule " + rule);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("sandwich=ok") != std::string::npos);
  CHECK(r.output.find("e2=") != std::string::npos);
  // evaluating twice gives byte-identical reports
  CHECK(run("error --config " + cfg + " --rule " + rule).output == r.output);
}

TEST_CASE("error rejects tampered rule files at load") {
  const std::string cfg = write_temp("tamper.cfg", kMinimalConfig);
  const std::string rule =
      write_temp("tampered.rule", "b=2\nm=2\nf=111\ng=1\nz=2\n");  // z divisible by b
  const RunResult r = run("error --config " + cfg + " --rule " + rule);
  CHECK(r.exit_code == 1);
}

TEST_CASE("error maps a missing rule file to the I/O status") {
  const std::string cfg = write_temp("io.cfg", kMinimalConfig);
  CHECK(run("error --config " + cfg + " --rule /tmp/does_not_exist.rule").exit_code == 3);
}

TEST_CASE("table sweeps m and keeps every row inside the bounds") {
  const std::string cfg = write_temp(
      "table.cfg", "b=2\nm=1..5\ns1=2\ns2=2\nalpha1=2\nalpha2=2\ngamma1=power:1,2\ngamma2=power:1,2\n");
  const RunResult r = run("table --config " + cfg);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,N,e2,lower_sq,upper_sq,ratio");
  double prev_upper = 0.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    double v[6];
    for (int i = 0; i < 6; ++i) {
      REQUIRE(std::getline(cells, cell, ','));
      v[i] = std::strtod(cell.c_str(), nullptr);
    }
    CHECK(v[2] >= v[3] - 1e-9);      // e2 >= lower
    CHECK(v[2] <= v[4] + 1e-9);      // e2 <= upper
    CHECK(v[5] >= 1.0 - 1e-9);       // ratio
    if (rows) CHECK(v[4] * 2.0 == prev_upper);  // halving is exact for b=2
    prev_upper = v[4];
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("verify passes on the desk-scale default") {
  const std::string cfg = write_temp("verify.cfg", kMinimalConfig);
  const RunResult r = run("verify --config " + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
  CHECK(r.output.find("naive-vs-group: pass") != std::string::npos);
}

TEST_CASE("verify fault injection names the mu suite") {
  const std::string cfg = write_temp("inject.cfg", kMinimalConfig);
  const RunResult r = run("verify --config " + cfg + " --inject-mu-error");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("mu-omega-consistency: FAIL") != std::string::npos);
}

TEST_CASE("verify refuses N beyond the naive-oracle budget") {
  const std::string cfg = write_temp("big.cfg", std::string(kMinimalConfig) + "m=9\n");
  const RunResult r = run("verify --config " + cfg);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("N <= 256") != std::string::npos);
}

TEST_CASE("classify verdicts") {
  const std::string strong = write_temp("strong.cfg", "gamma1=power:1,2\ngamma2=power:1,2\n");
  RunResult r = run("classify --config " + strong);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("strong_poly=yes") != std::string::npos);

  const std::string flat = write_temp("flat.cfg", "gamma1=const:1\ngamma2=const:1\n");
  r = run("classify --config " + flat);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("weak=no") != std::string::npos);

  const std::string mixed = write_temp("mixed.cfg", "gamma1=power:1,2\ngamma2=const:1\n");
  r = run("classify --config " + mixed);
  CHECK(r.output.find("weak=no") != std::string::npos);

  const std::string expl = write_temp("expl.cfg", "gamma1=explicit:1,0.5\ngamma2=power:1,2\n");
  CHECK(run("classify --config " + expl).exit_code == 1);
}

TEST_CASE("invalid config values exit with the validation status") {
  const std::string bad = write_temp("bad.cfg", std::string(kMinimalConfig) + "alpha1=0.5\n");
  CHECK(run("construct --config " + bad).exit_code == 1);
  const std::string unknown = write_temp("unknown.cfg", std::string(kMinimalConfig) + "wat=1\n");
  CHECK(run("construct --config " + unknown).exit_code == 1);
  CHECK(run("construct --config /tmp/no_such_config.cfg").exit_code == 3);
}
