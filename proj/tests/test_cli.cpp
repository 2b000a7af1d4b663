#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minkit/state_io.hpp"

using namespace minkit;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("MINKIT_CLI");
  return env ? env : "./tools/minkit";
}

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  fs::path out = fs::temp_directory_path() / "minkit_cli_stdout.txt";
  std::string cmd = cli_path() + " " + args + " > " + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  fs::remove(out);
  int code = -1;
#ifdef WEXITSTATUS
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
#else
  code = status;
#endif
  return {code, buf.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path write_bell_file() {
  fs::path p = fs::temp_directory_path() / "minkit_bell.json";
  save_state(p.string(), pure_from_schmidt(SchmidtForm{{0.5, 0.5}, 2, 2}));
  return p;
}

}  // namespace

TEST_CASE("measure: Bell state h_min is 0.5 and exits 0") {
  fs::path bell = write_bell_file();
  RunResult r = run_cli("measure " + bell.string() + " --measures h_min");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.stdout_text);
  CHECK(doc["measures"].size() == 1);
  CHECK(std::abs(doc["measures"][0]["value"].get<double>() - 0.5) < 1e-8);
  fs::remove(bell);
}

TEST_CASE("measure: product state reports zeros across measures") {
  DensityMatrix a = random_density(1, 2, 2, 12);
  DensityMatrix b = random_density(1, 2, 2, 13);
  DensityMatrix prod = make_density(kron(a.matrix, b.matrix), 2, 2);
  fs::path p = fs::temp_directory_path() / "minkit_prod.json";
  save_state(p.string(), prod);
  RunResult r = run_cli("measure " + p.string() +
                        " --measures h_min,hs_min,skew_min,affinity_min");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.stdout_text);
  for (const auto& m : doc["measures"]) {
    CHECK(std::abs(m["value"].get<double>()) < 1e-8);
  }
  fs::remove(p);
}

TEST_CASE("measure: h_min and skew_min agree on a random 2x3 state") {
  fs::path p = fs::temp_directory_path() / "minkit_r23.json";
  save_state(p.string(), random_density(2, 3, 3, 77));
  RunResult r =
      run_cli("measure " + p.string() + " --measures h_min,skew_min");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.stdout_text);
  double h = doc["measures"][0]["value"].get<double>();
  double s = doc["measures"][1]["value"].get<double>();
  CHECK(std::abs(h - s) < 1e-6);
  fs::remove(p);
}

TEST_CASE("measure: invalid state file exits 2 naming the invariant") {
  fs::path p = fs::temp_directory_path() / "minkit_bad.json";
  std::ofstream(p) << R"({"m": 1, "n": 2,
    "matrix": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})";
  RunResult r = run_cli("measure " + p.string());
  CHECK(r.exit_code == 2);
  fs::remove(p);
}

TEST_CASE("measure: unknown measure exits 2") {
  fs::path bell = write_bell_file();
  RunResult r = run_cli("measure " + bell.string() + " --measures bogus");
  CHECK(r.exit_code == 2);
  fs::remove(bell);
}

TEST_CASE("sweep: bell_diagonal endpoints match the doubled display scaling") {
  fs::path csv = fs::temp_directory_path() / "minkit_sweep.csv";
  RunResult r = run_cli(
      "sweep --family bell_diagonal --start 0 --stop 1 --steps 11 "
      "--measures h_min,hs_min --paper-scale --out " +
      csv.string());
  REQUIRE(r.exit_code == 0);
  std::string text = read_file(csv);
  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "param,h_min,hs_min");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  REQUIRE(rows.size() == 11);
  CHECK(std::abs(rows.front()[1]) < 1e-10);
  CHECK(std::abs(rows.front()[2]) < 1e-10);
  CHECK(std::abs(rows.back()[1] - 1.0) < 1e-10);
  CHECK(std::abs(rows.back()[2] - 1.0) < 1e-10);
  fs::remove(csv);
}

TEST_CASE("sweep: isotropic and werner roots sit at 1/n^2 and 1/d") {
  fs::path csv = fs::temp_directory_path() / "minkit_iso.csv";
  RunResult r = run_cli(
      "sweep --family isotropic --start 0 --stop 1 --steps 5 --dim 2 "
      "--measures h_min --out " +
      csv.string());
  REQUIRE(r.exit_code == 0);
  // Grid point x = 0.25 is the second row.
  std::istringstream lines(read_file(csv));
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.substr(0, 5) == "0.25,");
  CHECK(std::abs(std::stod(line.substr(5))) < 1e-12);
  fs::remove(csv);

  fs::path wcsv = fs::temp_directory_path() / "minkit_wern.csv";
  RunResult w = run_cli(
      "sweep --family werner --start -1 --stop 1 --steps 5 --dim 2 "
      "--measures h_min --out " +
      wcsv.string());
  REQUIRE(w.exit_code == 0);
  std::istringstream wlines(read_file(wcsv));
  std::getline(wlines, line);
  for (int i = 0; i < 4; ++i) std::getline(wlines, line);
  CHECK(line.substr(0, 4) == "0.5,");
  CHECK(std::abs(std::stod(line.substr(4))) < 1e-12);
  fs::remove(wcsv);
}

TEST_CASE("sweep: deterministic byte-for-byte, also with --jobs") {
  fs::path a = fs::temp_directory_path() / "minkit_sweep_a.csv";
  fs::path b = fs::temp_directory_path() / "minkit_sweep_b.csv";
  std::string base =
      "sweep --family werner --start -1 --stop 1 --steps 21 --dim 2 "
      "--measures h_min,hs_min --out ";
  REQUIRE(run_cli(base + a.string()).exit_code == 0);
  REQUIRE(run_cli(base + b.string() + " --jobs 4").exit_code == 0);
  CHECK(read_file(a) == read_file(b));
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("sweep: invalid range exits 2") {
  RunResult r = run_cli(
      "sweep --family isotropic --start 0 --stop 1.5 --steps 5 --dim 2");
  CHECK(r.exit_code == 2);
}

TEST_CASE("seqweak: Bell curve approaches 0.5 and n = 0 row is zero") {
  fs::path bell = write_bell_file();
  fs::path csv = fs::temp_directory_path() / "minkit_seq.csv";
  RunResult r = run_cli("seqweak " + bell.string() +
                        " --x 3 --n-max 10 --out " + csv.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(read_file(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x,n,H0n");
  double last = -1.0;
  double first = -1.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    double v = std::stod(line.substr(line.rfind(',') + 1));
    if (rows == 0) first = v;
    CHECK(v >= last - 1e-15);  // monotone in n
    last = v;
    ++rows;
  }
  CHECK(rows == 11);
  CHECK(first == 0.0);
  CHECK(std::abs(last - 0.5) < 1e-3);
  fs::remove(bell);
  fs::remove(csv);
}

TEST_CASE("verify: exits 0 and is byte-identical across runs") {
  fs::path r1 = fs::temp_directory_path() / "minkit_verify1.txt";
  fs::path r2 = fs::temp_directory_path() / "minkit_verify2.txt";
  RunResult a =
      run_cli("verify --battery 6 --seed 7 --out " + r1.string());
  RunResult b =
      run_cli("verify --battery 6 --seed 7 --out " + r2.string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(read_file(r1) == read_file(r2));
  CHECK(read_file(r1).find("ALL CHECKS PASSED") != std::string::npos);
  fs::remove(r1);
  fs::remove(r2);
}

TEST_CASE("measure: --paper-scale doubles reported values") {
  fs::path bell = write_bell_file();
  RunResult r = run_cli("measure " + bell.string() +
                        " --measures h_min --paper-scale");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.stdout_text);
  CHECK(std::abs(doc["measures"][0]["value"].get<double>() - 1.0) < 1e-8);
  CHECK(doc["measures"][0]["scaled_by"].get<int>() == 2);
  fs::remove(bell);
}

TEST_CASE("verify: battery below 1 exits 2") {
  CHECK(run_cli("verify --battery 0").exit_code == 2);
}

TEST_CASE("mkstate writes a loadable state") {
  fs::path p = fs::temp_directory_path() / "minkit_mk.json";
  RunResult r = run_cli("mkstate --family isotropic --dim 3 --x 0.5 --out " +
                        p.string());
  REQUIRE(r.exit_code == 0);
  DensityMatrix rho = load_state(p.string());
  CHECK(rho.m == 3);
  CHECK(rho.n == 3);
  fs::remove(p);
}
