// End-to-end tests of the command-line interface; every assertion goes
// through the spawned binary's stdout and exit code.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

#ifndef QIDENT_CLI_PATH
#error "QIDENT_CLI_PATH must point at the CLI binary"
#endif

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string command =
      env + (env.empty() ? "" : " ") + QIDENT_CLI_PATH + " " + args +
      " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("exact command") {
  SUBCASE("N=2 d=2 reproduces the closed form") {
    const auto result = run_cli("exact --N 2 --d 2");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("command") == "exact");
    const double expected = 0.5 + (std::sqrt(2.0) + std::sqrt(5.0)) / 18.0;
    CHECK(std::abs(report.at("p_ident").get<double>() - expected) <= 1e-12);
    CHECK(report.at("terms").size() == 2);
    CHECK(report.at("gap").get<double>() > 0.0);
  }

  SUBCASE("N=1 d=2 gap") {
    const auto result = run_cli("exact --N 1 --d 2");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    const double expected_gap = 5.0 / 6.0 - (0.5 + std::sqrt(3.0) / 12.0);
    CHECK(std::abs(report.at("gap").get<double>() - expected_gap) <= 1e-12);
  }

  SUBCASE("d=1 is a usage error") {
    CHECK(run_cli("exact --N 1 --d 1").exit_code == 2);
  }

  SUBCASE("csv format uses 17 significant digits") {
    const auto result = run_cli("exact --N 1 --d 2 --format csv");
    REQUIRE(result.exit_code == 0);
    const auto rows = parse_csv(result.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"N", "d", "p_ident", "p_disc",
                                              "gap"});
    const double p = std::stod(rows[1][2]);
    CHECK(std::abs(p - (0.5 + std::sqrt(3.0) / 12.0)) == 0.0);
  }
}

TEST_CASE("spectrum command") {
  SUBCASE("N=1 d=2 against the predicted blocks") {
    const auto result = run_cli("spectrum --N 1 --d 2");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("build") == "sym");
    CHECK(report.at("dim") == 8);
    CHECK(report.at("max_deviation").get<double>() <= 1e-9);
    bool saw_zero_cluster = false;
    for (const auto& cluster : report.at("clusters")) {
      CHECK(cluster.at("multiplicity") == cluster.at("predicted_multiplicity"));
      if (cluster.at("value").get<double>() == 0.0) {
        saw_zero_cluster = true;
        CHECK(cluster.at("multiplicity") == 4);
      }
    }
    CHECK(saw_zero_cluster);
  }

  SUBCASE("full build agrees") {
    const auto result = run_cli("spectrum --N 2 --d 3 --full");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("build") == "full");
    CHECK(report.at("dim") == 243);
    CHECK(report.at("max_deviation").get<double>() <= 1e-9);
  }

  SUBCASE("restricted build reaches past the full-register cap") {
    const auto result = run_cli("spectrum --N 5 --d 3");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("build") == "sym");
    CHECK(report.at("dim") == 3 * 21 * 21);
    CHECK(report.at("max_deviation").get<double>() <= 1e-9);
  }

  SUBCASE("the full register exceeds the default cap at N=5 d=3") {
    CHECK(run_cli("spectrum --N 5 --d 3 --full").exit_code == 3);
  }

  SUBCASE("QIDENT_CAP env var caps the build") {
    CHECK(run_cli("spectrum --N 2 --d 3 --full", "QIDENT_CAP=100").exit_code ==
          3);
    CHECK(run_cli("spectrum --N 2 --d 3 --full --cap 243",
                  "QIDENT_CAP=100").exit_code == 0);
  }

  SUBCASE("dump emits the documented binary format") {
    const std::string path = "cli_test_dump.bin";
    const auto result =
        run_cli("spectrum --N 1 --d 3 --full --dump " + path);
    REQUIRE(result.exit_code == 0);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    char magic[6];
    in.read(magic, 6);
    CHECK(std::memcmp(magic, "QIDOP1", 6) == 0);
    uint32_t n = 0;
    uint32_t d = 0;
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&d), 4);
    CHECK(n == 3);
    CHECK(d == 3);
    in.seekg(0, std::ios::end);
    CHECK(in.tellg() == 14 + 27 * 27 * 16);
    std::remove(path.c_str());

    CHECK(run_cli("spectrum --N 1 --d 3 --dump " + path).exit_code == 2);
  }
}

TEST_CASE("povm command") {
  const auto result = run_cli("povm --N 1 --d 2");
  REQUIRE(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report.at("rank_e1") == 2);
  CHECK(std::abs(report.at("tr_e1_d").get<double>() - std::sqrt(3.0)) <= 1e-9);
  CHECK(std::abs(report.at("optimality_residual").get<double>()) <= 1e-9);
  const double expected = 0.5 + std::sqrt(3.0) / 12.0;
  CHECK(std::abs(report.at("p_ident").get<double>() - expected) <= 1e-9);
}

TEST_CASE("simulate command") {
  SUBCASE("tracks the analytic value") {
    const auto result =
        run_cli("simulate --N 1 --d 2 --trials 100000 --seed 42");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(std::abs(report.at("z_score").get<double>()) < 4.0);
    CHECK(std::abs(report.at("analytic").get<double>() -
                   (0.5 + std::sqrt(3.0) / 12.0)) <= 1e-12);
    CHECK(report.at("workers") == 1);
  }

  SUBCASE("identical flags give byte-identical output") {
    const auto first =
        run_cli("simulate --N 1 --d 2 --trials 20000 --seed 9");
    const auto second =
        run_cli("simulate --N 1 --d 2 --trials 20000 --seed 9");
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);
  }

  SUBCASE("outcome mode is noisier than conditional mode") {
    const auto conditional =
        run_cli("simulate --N 1 --d 2 --trials 20000 --seed 5");
    const auto outcome =
        run_cli("simulate --N 1 --d 2 --trials 20000 --seed 5 --mode outcome");
    const double se_cond =
        json::parse(conditional.out).at("stderr").get<double>();
    const double se_out = json::parse(outcome.out).at("stderr").get<double>();
    CHECK(se_out >= se_cond);
  }

  SUBCASE("rejects unknown modes and tiny runs") {
    CHECK(run_cli("simulate --N 1 --d 2 --mode sideways").exit_code == 2);
    CHECK(run_cli("simulate --N 1 --d 2 --trials 10").exit_code == 2);
  }
}

TEST_CASE("mcopy command") {
  SUBCASE("M=1 agrees with the closed form") {
    const auto result = run_cli("mcopy --M 1 --N 2 --d 2");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    const double expected = 0.5 + (std::sqrt(2.0) + std::sqrt(5.0)) / 18.0;
    CHECK(std::abs(report.at("p_max").get<double>() - expected) <= 1e-9);
    CHECK(std::abs(report.at("closed_form_delta").get<double>()) <= 1e-9);
  }

  SUBCASE("M=2 N=1 d=2 oracle value") {
    const auto result = run_cli("mcopy --M 2 --N 1 --d 2");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(std::abs(report.at("p_max").get<double>() - 0.6767766952966369) <=
          1e-9);
    CHECK(report.at("p_max").get<double>() > 0.6443375672974064);
  }

  SUBCASE("cap violations exit 3") {
    CHECK(run_cli("mcopy --M 3 --N 3 --d 3").exit_code == 3);
  }
}

TEST_CASE("sweep command") {
  SUBCASE("csv rows reproduce the qubit table") {
    const auto result = run_cli("sweep --N-max 3 --d 2 --format csv");
    REQUIRE(result.exit_code == 0);
    const auto rows = parse_csv(result.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] ==
          std::vector<std::string>{"N", "d", "p_ident", "p_disc", "gap"});
    const std::vector<double> expected = {
        0.5 + std::sqrt(3.0) / 12.0,
        0.5 + (std::sqrt(2.0) + std::sqrt(5.0)) / 18.0,
        0.5 + (std::sqrt(15.0) + 4.0 * std::sqrt(3.0) + 3.0 * std::sqrt(7.0)) /
                  80.0};
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(std::stod(rows[i + 1][2]) - expected[i]) <= 1e-12);
      CHECK(std::stod(rows[i + 1][4]) > 0.0);
    }
  }

  SUBCASE("json rows over several dimensions") {
    const auto result = run_cli("sweep --N-max 4 --d 2,3");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    REQUIRE(report.at("rows").size() == 8);
    for (const auto& row : report.at("rows")) {
      CHECK(row.at("gap").get<double>() > 0.0);
      CHECK(row.at("p_ident").get<double>() > 0.5);
    }
  }
}

TEST_CASE("usage shapes") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("unknown-command").exit_code == 2);
  CHECK(run_cli("exact --N 1").exit_code == 2);      // missing --d
  CHECK(run_cli("exact --N 0 --d 2").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
