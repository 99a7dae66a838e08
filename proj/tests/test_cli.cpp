#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "domino/io.hpp"
#include "domino/model.hpp"

using namespace domino;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "domino_test_cli";
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path capture = test_dir() / "capture.txt";
  const std::string command =
      std::string(DOMINO_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("gen --hebbian writes the documented 9x9 instance") {
  const auto out = test_dir() / "gen9.txt";
  const auto result = run_cli("gen --hebbian --n-groups 3 --sizes 2,3,4 --m 20 --b 0 --seed 7 --out " +
                              out.string());
  CHECK(result.exit_code == 0);
  const auto J = io::read_matrix(out);
  REQUIRE(J.size() == 9);
  // groups are the index ranges [0,2), [2,5), [5,9)
  CHECK(J.at(0, 1) == 1.0);
  CHECK(J.at(2, 4) == 1.0);
  CHECK(J.at(5, 8) == 1.0);
}

TEST_CASE("gen is deterministic: identical commands, identical bytes") {
  const auto out_a = test_dir() / "det_a.txt";
  const auto out_b = test_dir() / "det_b.txt";
  CHECK(run_cli("gen --hebbian --sizes 3,3 --m 10 --b 0.2 --seed 9 --out " + out_a.string())
            .exit_code == 0);
  CHECK(run_cli("gen --hebbian --sizes 3,3 --m 10 --b 0.2 --seed 9 --out " + out_b.string())
            .exit_code == 0);
  CHECK(read_file(out_a) == read_file(out_b));
  const auto out_c = test_dir() / "det_c.txt";
  CHECK(run_cli("gen --hebbian --sizes 3,3 --m 10 --b 0.2 --seed 10 --out " + out_c.string())
            .exit_code == 0);
  CHECK(read_file(out_a) != read_file(out_c));
}

TEST_CASE("gen --random-symmetric output loads and validates") {
  const auto out = test_dir() / "sym.txt";
  const auto result = run_cli("gen --random-symmetric --n 8 --seed 1 --out " + out.string());
  CHECK(result.exit_code == 0);
  CHECK(io::read_matrix(out).size() == 8);
}

TEST_CASE("minimize --dynamics random on the zero matrix accepts no flips") {
  const auto matrix = test_dir() / "zero.txt";
  const auto start = test_dir() / "zero_start.txt";
  io::write_matrix(matrix, ConnectionMatrix::validate_flat(4, std::vector<double>(16, 0.0)));
  io::write_configuration(start, SpinConfiguration::validate({1, -1, 1, -1}));
  const auto result = run_cli("minimize --matrix " + matrix.string() +
                              " --dynamics random --start " + start.string() + " --seed 3");
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "initial energy = 0"));
  CHECK(contains(result.output, "final energy E = 0"));
  CHECK(contains(result.output, "flips = 0"));
}

TEST_CASE("minimize --dynamics synchronous reports the antiferromagnet two-cycle") {
  const auto matrix = test_dir() / "anti.txt";
  const auto start = test_dir() / "anti_start.txt";
  io::write_matrix(matrix, ConnectionMatrix::validate({{0, -1}, {-1, 0}}));
  io::write_configuration(start, SpinConfiguration::validate({1, 1}));
  const auto result = run_cli("minimize --matrix " + matrix.string() +
                              " --dynamics synchronous --start " + start.string());
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "TwoCycle"));
}

TEST_CASE("minimize --dynamics domain --defrost reports r = 0 on a b=0 cluster instance") {
  const auto matrix = test_dir() / "cluster.txt";
  const auto partition = test_dir() / "cluster_p.txt";
  const auto start = test_dir() / "cluster_s.txt";
  CHECK(run_cli("gen --hebbian --sizes 3,4,5 --m 20 --b 0 --seed 11 --out " + matrix.string() +
                " --partition-out " + partition.string() + " --block-start-out " + start.string())
            .exit_code == 0);
  const auto result =
      run_cli("minimize --matrix " + matrix.string() + " --dynamics domain --partition " +
              partition.string() + " --defrost --start " + start.string() + " --seed 5");
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "r = 0\n"));
  CHECK(contains(result.output, "defrost flips = 0"));
}

TEST_CASE("minimize writes the final state and trace when asked") {
  const auto matrix = test_dir() / "m6.txt";
  const auto state_out = test_dir() / "m6_state.txt";
  const auto trace = test_dir() / "m6_trace.txt";
  CHECK(run_cli("gen --random-symmetric --n 6 --seed 2 --out " + matrix.string()).exit_code == 0);
  const auto result = run_cli("minimize --matrix " + matrix.string() +
                              " --dynamics random --random-start --seed 8 --state-out " +
                              state_out.string() + " --trace " + trace.string());
  CHECK(result.exit_code == 0);
  const auto final_state = io::read_configuration(state_out);
  CHECK(final_state.size() == 6);
  CHECK(is_local_minimum(io::read_matrix(matrix), final_state));
}

TEST_CASE("stochastic subcommands without --seed exit 2") {
  const auto out = test_dir() / "noseed.txt";
  CHECK(run_cli("gen --hebbian --sizes 2,2 --m 5 --out " + out.string()).exit_code == 2);
  const auto matrix = test_dir() / "m6.txt";
  CHECK(run_cli("minimize --matrix " + matrix.string() + " --dynamics random --random-start")
            .exit_code == 2);
}

TEST_CASE("argument errors exit 2") {
  CHECK(run_cli("gen --seed 1 --out /tmp/x.txt").exit_code == 2);  // no generator picked
  CHECK(run_cli("minimize --matrix x --dynamics bogus --random-start --seed 1").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("experiment fig1 --b 0,0.1 --seed 1").exit_code == 2);  // fig1 takes one b
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("missing input files exit 1, malformed content exits 2") {
  CHECK(run_cli("minimize --matrix /nonexistent/J.txt --dynamics random --random-start --seed 1")
            .exit_code == 1);
  const auto bad = test_dir() / "bad.txt";
  std::ofstream(bad) << "2\n0 abc\n1 0\n";
  const auto result =
      run_cli("minimize --matrix " + bad.string() + " --dynamics random --random-start --seed 1");
  CHECK(result.exit_code == 2);
  CHECK(contains(result.output, ":2:2:"));
}

TEST_CASE("--help exits 0") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("minimize --help").exit_code == 0);
}

TEST_CASE("experiment table1 writes the CSV with its header") {
  const auto dir = test_dir() / "exp";
  const auto result =
      run_cli("experiment table1 --m 100 --sizes 5,5,5 --b 0.1 --seed 2 --out-dir " + dir.string());
  CHECK(result.exit_code == 0);
  const std::string csv = read_file(dir / "table1.csv");
  CHECK(contains(csv, "b,mean_intragroup_coupling,expected"));
  CHECK(contains(csv, "0.1"));
}

TEST_CASE("experiment fig1 on a tiny instance writes consistent CSV") {
  const auto dir = test_dir() / "exp_fig1";
  const auto result = run_cli(
      "experiment fig1 --n 24 --m 8 --n-groups 4 --k-random 4 --matrices 2 --starts 3 --seed 5 "
      "--out-dir " +
      dir.string());
  CHECK(result.exit_code == 0);
  const std::string csv = read_file(dir / "fig1.csv");
  CHECK(contains(csv, "matrix,dynamics,deepest_energy,hits,runs,frequency"));
  CHECK(contains(csv, "1,RANDOM,"));
  CHECK(contains(csv, "2,DM-CLS,"));
}

TEST_CASE("oracle subcommand reports counts and writes CSV") {
  const auto matrix = test_dir() / "oracle_m.txt";
  const auto partition = test_dir() / "oracle_p.txt";
  const auto csv = test_dir() / "oracle.csv";
  CHECK(run_cli("gen --hebbian --sizes 3,4,5 --m 20 --b 0 --seed 11 --out " + matrix.string() +
                " --partition-out " + partition.string())
            .exit_code == 0);
  const auto result = run_cli("oracle --matrix " + matrix.string() + " --partition " +
                              partition.string() + " --out " + csv.string());
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "local minima"));
  CHECK(contains(result.output, "domain local minima"));
  CHECK(contains(read_file(csv), "kind,energy,configuration"));
}
