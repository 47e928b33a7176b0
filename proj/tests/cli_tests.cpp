// End-to-end tests of the command-line tool. argv[1] is the path to the
// built binary; each case runs it through /bin/sh with stdout captured
// to a temp file and checks exit code and output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::ordered_json;

namespace {

std::string cli_path;
std::string work_dir;
int failures = 0;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string out_file = work_dir + "/out.txt";
  std::string cmd = "'" + cli_path + "' " + args + " > '" + out_file +
                    "' 2> '" + work_dir + "/err.txt'";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(out_file);
  std::stringstream ss;
  ss << f.rdbuf();
  return {code, ss.str()};
}

void expect(bool condition, const std::string& what) {
  if (!condition) {
    std::cerr << "FAIL: " << what << "\n";
    ++failures;
  }
}

void write_file(const std::string& name, const std::string& content) {
  std::ofstream f(work_dir + "/" + name);
  f << content;
}

void test_compute_interval() {
  RunResult r = run_cli("compute --gen interval:4 --q T,E,M");
  expect(r.exit_code == 0, "interval compute exits 0");
  json j = json::parse(r.output, nullptr, false);
  expect(!j.is_discarded(), "interval compute emits JSON");
  expect(j.at("E") == "44", "E([4]) = 44");
  expect(j.at("T").at("algorithm") == "zero_pattern", "default algorithm tag");
}

void test_compute_oracle() {
  RunResult r = run_cli("compute --gen sharp:2 --q T --oracle");
  expect(r.exit_code == 0, "sharp:2 oracle compute exits 0");
  json j = json::parse(r.output, nullptr, false);
  expect(!j.is_discarded() && j.at("T").at("total") == "3/8",
         "T(sharp:2) = 3/8");
  expect(j.at("agreement").get<bool>(), "oracle agreement verdict");
}

void test_compute_set_file() {
  write_file("set.txt", "# three elements\n1\n2\n4\n");
  RunResult r = run_cli("compute --set '" + work_dir +
                        "/set.txt' --q M,affine_energy,dyadic --oracle");
  expect(r.exit_code == 0, "set-file compute exits 0");
  json j = json::parse(r.output, nullptr, false);
  expect(!j.is_discarded() && j.at("M") == "19", "M({1,2,4}) = 19");
  expect(j.at("agreement").get<bool>(), "set-file oracle agreement");
}

void test_compute_matrix_measure() {
  json measure = {
      {"atoms", json::array({{{"x", json::array({"1", "2", "3", "4"})},
                              {"w", "1"}}})},
      {"probability", true}};
  write_file("measure.json", measure.dump());
  RunResult r = run_cli("compute --matrix-measure '" + work_dir +
                        "/measure.json' --q delta,T");
  expect(r.exit_code == 0, "matrix-measure compute exits 0");
  json j = json::parse(r.output, nullptr, false);
  expect(!j.is_discarded() && j.at("delta").at("mass") == "1",
         "delta of a one-atom measure is 1");
  expect(j.at("T").at("total") == "1", "T of a one-atom measure is 1");
}

void test_usage_errors() {
  expect(run_cli("compute --gen interval:4 --q nonsense").exit_code == 2,
         "unknown quantity exits 2");
  expect(run_cli("compute --q T").exit_code == 2, "missing input exits 2");
  expect(run_cli("compute --gen bogus:1 --q T").exit_code == 2,
         "unknown generator exits 2");
  expect(run_cli("verify no-such-suite").exit_code == 2,
         "unknown suite exits 2");
  expect(run_cli("sweep --family bogus").exit_code == 2,
         "unknown family exits 2");
  expect(run_cli("").exit_code == 2, "missing subcommand exits 2");
}

void test_cap_exit() {
  RunResult r = run_cli("compute --gen interval:9 --q T --oracle");
  expect(r.exit_code == 3, "oracle past the size cap exits 3");
}

void test_verify_suites() {
  RunResult t1 = run_cli("verify theorem1 --trials 50 --seed 7");
  expect(t1.exit_code == 0, "theorem1 suite passes");
  json j = json::parse(t1.output, nullptr, false);
  expect(!j.is_discarded() && j.at("pass").get<bool>(), "theorem1 verdict");
  expect(j.contains("max_T_over_delta"), "theorem1 reports max ratio");

  RunResult sr = run_cli("verify sharp-ratio --N 2..8");
  expect(sr.exit_code == 0, "sharp-ratio suite passes");

  RunResult ab = run_cli("verify affine-bijection --sizes 2..6 --trials 30");
  expect(ab.exit_code == 0, "affine-bijection suite passes");

  RunResult lb = run_cli("verify lower-bounds --trials 40 --seed 3");
  expect(lb.exit_code == 0, "lower-bounds suite passes");

  RunResult wt = run_cli("verify wtun --trials 60 --seed 5");
  expect(wt.exit_code == 0, "wtun suite passes");
}

void test_sweep() {
  RunResult r = run_cli("sweep --family interval --N 4..8");
  expect(r.exit_code == 0, "interval sweep exits 0");
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  expect(header.rfind("family,param,algorithm,card", 0) == 0,
         "sweep CSV header");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  expect(rows == 5, "sweep emits one row per parameter");
  expect(r.output.find("zero_pattern") != std::string::npos,
         "sweep rows carry the algorithm tag");

  expect(run_cli("sweep --family geometric --N 4..6").exit_code == 0,
         "geometric sweep exits 0");
  expect(run_cli("sweep --family gap --N 2..4").exit_code == 0,
         "gap sweep exits 0");
}

void test_determinism() {
  std::string cmd = "verify theorem1 --trials 40 --seed 11";
  RunResult a = run_cli(cmd + " --threads 1");
  RunResult b = run_cli(cmd + " --threads 4");
  expect(a.exit_code == 0 && b.exit_code == 0, "threaded runs exit 0");
  expect(a.output == b.output, "reports identical across thread counts");

  RunResult c = run_cli("sweep --family interval --N 4..10 --threads 1");
  RunResult d = run_cli("sweep --family interval --N 4..10 --threads 4");
  expect(c.output == d.output, "sweep identical across thread counts");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-binary>\n";
    return 2;
  }
  cli_path = argv[1];
  char tmpl[] = "/tmp/commutelab_cli_test_XXXXXX";
  const char* dir = mkdtemp(tmpl);
  if (!dir) {
    std::cerr << "cannot create temp dir\n";
    return 2;
  }
  work_dir = dir;

  test_compute_interval();
  test_compute_oracle();
  test_compute_set_file();
  test_compute_matrix_measure();
  test_usage_errors();
  test_cap_exit();
  test_verify_suites();
  test_sweep();
  test_determinism();

  if (failures) {
    std::cerr << failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
