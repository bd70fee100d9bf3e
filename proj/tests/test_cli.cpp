#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(IMBENCH_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("cli table1") {
  SUBCASE("default grid hits the published cells") {
    auto r = run_cli("table1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0.05,400000,18243") != std::string::npos);
    CHECK(r.output.find("0.2,25000,1141") != std::string::npos);
    CHECK(r.output.find("0.4,6250,286") != std::string::npos);
  }
  SUBCASE("custom single epsilon computes one row") {
    auto r = run_cli("table1 --epsilons 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "epsilon,chebyshev_n,chernoff_n\n0.5,4000,183\n");
  }
}

TEST_CASE("cli ingest") {
  SUBCASE("label zero warns but succeeds") {
    write_file("/tmp/imbench_cli_zero.txt", "0 1\n1 2\n");
    auto r = run_cli("ingest --input /tmp/imbench_cli_zero.txt");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("warning") != std::string::npos);
    CHECK(r.output.find("\"contained_zero\": true") != std::string::npos);
  }
  SUBCASE("undirected file of E edges emits 2E arcs") {
    write_file("/tmp/imbench_cli_undir.txt", "1 2\n2 3\n3 4\n");
    auto r = run_cli("ingest --input /tmp/imbench_cli_undir.txt");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"arcs\": 6") != std::string::npos);
  }
  SUBCASE("malformed line reported with its number, exit 2") {
    write_file("/tmp/imbench_cli_bad.txt",
               "1 2\n2 3\n3 4\n4 5\n5 6\n6 7\nseven eight\n");
    auto r = run_cli("ingest --input /tmp/imbench_cli_bad.txt");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 7") != std::string::npos);
  }
  SUBCASE("missing file exits 2") {
    CHECK(run_cli("ingest --input /tmp/imbench_cli_missing.txt").exit_code == 2);
  }
}

TEST_CASE("cli counterexample") {
  SUBCASE("rounds below 1000 rejected with exit 2") {
    CHECK(run_cli("counterexample --n 4 --rounds 10 --seed 1").exit_code == 2);
  }
  SUBCASE("verdict line present on a normal run") {
    auto r = run_cli("counterexample --n 2 --rounds 1000 --seed 9 --exact");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("exact (core gadget): 3") != std::string::npos);
  }
}

TEST_CASE("cli select and resource caps") {
  write_file("/tmp/imbench_cli_graph.txt", "1 2\n2 3\n3 1\n1 3\n");
  auto ing = run_cli(
      "ingest --input /tmp/imbench_cli_graph.txt --scheme wc --output "
      "/tmp/imbench_cli_graph.csv");
  REQUIRE(ing.exit_code == 0);

  SUBCASE("ris policies demand an explicit epsilon") {
    auto r = run_cli(
        "select --graph /tmp/imbench_cli_graph.csv --algo ris-imm --k 1 "
        "--seed 3");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("epsilon") != std::string::npos);
  }
  SUBCASE("storage cap maps to exit 3") {
    const std::string cmd =
        std::string("IMBENCH_RR_CAP_SLOTS=50 ") + IMBENCH_CLI_PATH +
        " select --graph /tmp/imbench_cli_graph.csv --algo ris-fixed "
        "--theta 100000 --k 1 --seed 3 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    CHECK(WEXITSTATUS(pclose(pipe)) == 3);
    CHECK(out.find("cap") != std::string::npos);
  }
  SUBCASE("seed csv uses original labels") {
    auto r = run_cli(
        "select --graph /tmp/imbench_cli_graph.csv --algo degree --k 2 "
        "--seed 3 --model ic");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("rank,node_label,marginal_gain_estimate") !=
          std::string::npos);
    CHECK(r.output.find("1,1,") != std::string::npos);
  }
}

TEST_CASE("cli bench") {
  SUBCASE("missing config exits 2") {
    CHECK(run_cli("bench --config /tmp/imbench_cli_noconf.json").exit_code == 2);
  }
  SUBCASE("mock demo reports the verdict flip") {
    write_file("/tmp/imbench_cli_mock.json",
               "{\"mode\": \"mock-demo\", \"seed\": 5, \"target_spread\": 600,"
               " \"output_prefix\": \"/tmp/imbench_cli_mockrun\"}");
    auto r = run_cli("bench --config /tmp/imbench_cli_mock.json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("sound bar winner:  mock-a") != std::string::npos);
    CHECK(r.output.find("flawed bar winner: mock-b") != std::string::npos);
    CHECK(r.output.find("verdict flip reproduced") != std::string::npos);
  }
  SUBCASE("shared-seed config prints the p-value line") {
    write_file(
        "/tmp/imbench_cli_ss.json",
        "{\"mode\": \"shared-seed\", \"seed\": 21,"
        " \"instance\": {\"generator\": \"synthetic\", \"nodes\": 40,"
        " \"arcs\": 160, \"gen_seed\": 4, \"scheme\": \"wc\"},"
        " \"model\": \"ic\", \"k\": 2, \"run_count\": 3,"
        " \"algorithms\": [{\"algo\": \"celf\", \"param\": 60},"
        " {\"algo\": \"celfpp\", \"param\": 60}],"
        " \"output_prefix\": \"/tmp/imbench_cli_ssrun\"}");
    auto r = run_cli("bench --config /tmp/imbench_cli_ss.json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("p = ") != std::string::npos);
    CHECK(r.output.find("significant") != std::string::npos);
  }
}

TEST_CASE("cli sweep truncation note") {
  write_file("/tmp/imbench_cli_sweep_in.txt", "1 2\n2 3\n3 1\n1 3\n");
  auto ing = run_cli(
      "ingest --input /tmp/imbench_cli_sweep_in.txt --scheme wc --output "
      "/tmp/imbench_cli_sweep_in.csv");
  REQUIRE(ing.exit_code == 0);
  auto r = run_cli(
      "sweep --graph /tmp/imbench_cli_sweep_in.csv --algo greedy --k 1 "
      "--grid 60,80 --budget 0.000000001 --eval-rounds 100 --seed 2 "
      "--out-prefix /tmp/imbench_cli_sweep");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("every grid point exceeded") != std::string::npos);
}
