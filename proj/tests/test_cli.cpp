#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

// End-to-end checks of the installed binary: output shapes, exit codes, and
// thread-count invariance of stdout.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(GCONN_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string("/tmp/gconn_cli_") + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("compute matches the characterization prediction") {
  std::string tri = write_temp("tri.txt", "6 3\n0 1\n0 2\n1 2\n");
  RunResult r = run_cli("compute --complete 6 --delete " + tri + " --k 4 --mode kappa");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("kappa_4 = 3") != std::string::npos);
  CHECK(r.out.find("witness S:") != std::string::npos);
}

TEST_CASE("compute json parses and carries the family") {
  std::string tri = write_temp("tri.txt", "6 3\n0 1\n0 2\n1 2\n");
  RunResult r =
      run_cli("--format json compute --complete 6 --delete " + tri + " --k 4 --mode kappa");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("value") == 3);
  CHECK(j.at("family").at("trees").size() == 3);
}

TEST_CASE("pack reports a violating partition on a path") {
  std::string p3 = write_temp("p3.txt", "3 2\n0 1\n1 2\n");
  RunResult r = run_cli("pack --graph " + p3 + " --count 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("violating partition") != std::string::npos);
}

TEST_CASE("local two-terminal value equals the degree bound on K_5") {
  RunResult r = run_cli("local --complete 5 --s 0,3 --mode lambda");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lambda(S) = 4") != std::string::npos);
}

TEST_CASE("verify-theorem sweeps cleanly and is thread invariant") {
  RunResult one = run_cli("--threads 1 verify-theorem --n 6 --k 4 --theorem 2");
  CHECK(one.exit_code == 0);
  CHECK(one.out.find("counterexamples: 0") != std::string::npos);
  RunResult two = run_cli("--threads 2 verify-theorem --n 6 --k 4 --theorem 2");
  CHECK(one.out == two.out);

  RunResult json_run = run_cli("--format json verify-theorem --n 6 --k 4 --theorem 3");
  CHECK(json_run.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(json_run.out);
  CHECK(j.at("classes_checked") == 156);
  CHECK(j.at("counterexamples").empty());
}

TEST_CASE("construct runs the verifier on its output") {
  std::string m = write_temp("appendix.txt", "12 7\n8 0\n8 1\n8 2\n9 1\n9 3\n4 5\n5 7\n");
  RunResult r =
      run_cli("construct --complete 12 --delete " + m + " --which lemma11 --k 8 --s 0,1,2,3,4,5,6,7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verifier: clean") != std::string::npos);
  // The first greedily patched tree, as a sorted edge list.
  CHECK(r.out.find("0-3 1-6 2-3 3-8 4-8 5-8 6-8 7-8") != std::string::npos);
}

TEST_CASE("oracle-check agrees with itself") {
  RunResult r = run_cli("oracle-check --seed 3 --graphs 12 --max-n 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find(" 0 disagreements") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage from capacity") {
  CHECK(run_cli("compute --complete 6 --k 1 --mode kappa").exit_code == 2);   // bad k
  CHECK(run_cli("compute --complete 40 --k 4 --mode kappa").exit_code == 2);  // bad order
  CHECK(run_cli("compute --complete 12 --k 6 --mode kappa --threads 0").exit_code != 0);
  CHECK(run_cli("verify-theorem --n 9 --k 4 --theorem 2").exit_code == 3);    // over the iso cap
  CHECK(run_cli("verify-theorem --n 6 --k 5 --theorem 2").exit_code == 2);    // odd k

  std::string bad = write_temp("bad.txt", "3 1\n7 9\n");
  CHECK(run_cli("pack --graph " + bad + " --count 1").exit_code == 2);        // parse error
}
