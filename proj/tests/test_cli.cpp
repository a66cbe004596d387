#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// Exercises the installed binary end to end: exit-code contract, output
// determinism, and format switching.

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QFIB_CLI_PATH) + " " + args + " > cli_stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

json passing_config() {
  return json{{"family", {{"name", "equatorial"}}},
              {"grid", {{"start", 0.1}, {"stop", 3.0}, {"count", 12}}},
              {"checks", {"qfi"}},
              {"expected", {{"qfi", {{"value", 1.0}, {"tol", 1e-9}}}}},
              {"seed", 5}};
}

}  // namespace

TEST_CASE("cli: version prints and exits zero") {
  CHECK(run_cli("version") == 0);
  CHECK(slurp("cli_stdout.txt").find("qfib") != std::string::npos);
  CHECK(run_cli("list-families") == 0);
  CHECK(slurp("cli_stdout.txt").find("equatorial") != std::string::npos);
  CHECK(run_cli("list-channels") == 0);
  CHECK(slurp("cli_stdout.txt").find("hadamard_cnot") != std::string::npos);
}

TEST_CASE("cli: exit-code contract on passing and failing configs") {
  write_file("cfg_pass.json", passing_config().dump());
  CHECK(run_cli("run --config cfg_pass.json --output report_pass.json") == 0);

  json failing = passing_config();
  failing["expected"]["qfi"]["value"] = 2.0;  // impossible expectation
  write_file("cfg_fail.json", failing.dump());
  CHECK(run_cli("run --config cfg_fail.json --output report_fail.json") == 1);
  CHECK(run_cli("run --config cfg_fail.json --strict --output report_fail2.json") == 2);

  write_file("cfg_broken.json", "{ not json");
  CHECK(run_cli("run --config cfg_broken.json") == 2);

  std::remove("cfg_pass.json");
  std::remove("cfg_fail.json");
  std::remove("cfg_broken.json");
}

TEST_CASE("cli: reports are deterministic modulo the wall-time field") {
  write_file("cfg_det.json", passing_config().dump());
  REQUIRE(run_cli("run --config cfg_det.json --output det_a.json") == 0);
  REQUIRE(run_cli("run --config cfg_det.json --output det_b.json") == 0);
  json a = json::parse(slurp("det_a.json"));
  json b = json::parse(slurp("det_b.json"));
  a.erase("wall_time_ms");
  b.erase("wall_time_ms");
  CHECK(a.dump() == b.dump());
  std::remove("cfg_det.json");
  std::remove("det_a.json");
  std::remove("det_b.json");
}

TEST_CASE("cli: csv output and seed override") {
  write_file("cfg_csv.json", passing_config().dump());
  REQUIRE(run_cli("run --config cfg_csv.json --format csv --output table.csv --seed 99") == 0);
  const std::string csv = slurp("table.csv");
  CHECK(csv.rfind("theta,input_qfi,party_index,party_qfi,residuals,flags", 0) == 0);
  std::remove("cfg_csv.json");
  std::remove("table.csv");
}

TEST_CASE("cli: sweep emits one report per value") {
  json cfg{{"family", {{"name", "equatorial"}}},
           {"grid", {{"start", 0.3}, {"stop", 2.7}, {"count", 5}}},
           {"channel", {{"name", "infinite_broadcast"}, {"n_parties", 2}}},
           {"checks", {"broadcast"}},
           {"seed", 2}};
  write_file("cfg_sweep.json", cfg.dump());
  REQUIRE(run_cli("sweep --config cfg_sweep.json --vary channel.n_parties "
                  "--values 2 3 --output sweep_out.json") == 0);
  const json r0 = json::parse(slurp("sweep_out.json.0"));
  const json r1 = json::parse(slurp("sweep_out.json.1"));
  CHECK(r0.at("results").at("broadcast").at("verdict") == "Broadcast");
  CHECK(r1.at("results").at("broadcast").at("verdict") == "Broadcast");
  CHECK(r1.at("config").at("channel").at("n_parties") == 3);
  std::remove("cfg_sweep.json");
  std::remove("sweep_out.json.0");
  std::remove("sweep_out.json.1");
}
