#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef PERMDIST_CLI_PATH
#error "PERMDIST_CLI_PATH must point at the built binary"
#endif

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PERMDIST_CLI_PATH) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    res.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

struct CsvRow {
  std::vector<std::string> cells;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    CsvRow row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.cells.push_back(cell);
    if (line.back() == ',') row.cells.push_back("");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("spectrum of the two-copy weight-one sector") {
  const auto res = run_cli("spectrum -n 2 -l 1 -p 0.6");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 3);  // header + two eigenvalues
  CHECK(rows[0].cells ==
        std::vector<std::string>{"j", "eigenvalue", "multiplicity", "source"});
  CHECK(rows[1].cells[0] == "0");
  CHECK(std::stod(rows[1].cells[1]) == doctest::Approx(0.34).epsilon(1e-14));
  CHECK(rows[1].cells[2] == "1");
  CHECK(rows[1].cells[3] == "closed_form");
  CHECK(rows[2].cells[0] == "1");
  CHECK(std::stod(rows[2].cells[1]) == doctest::Approx(0.16).epsilon(1e-14));
}

TEST_CASE("flat spectrum at p = 0") {
  const auto res = run_cli("spectrum -n 4 -l 2 -p 0");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].cells[1] == "0.0625");
  }
}

TEST_CASE("spectrum oracle cross-check stays within tolerance") {
  const auto res = run_cli("spectrum -n 8 -l 4 -p 0.5 --oracle");
  REQUIRE(res.exit_code == 0);
  const auto pos = res.out.find("# max_abs_diff=");
  REQUIRE(pos != std::string::npos);
  const double diff = std::stod(res.out.substr(pos + 15));
  CHECK(diff <= 1e-9);
  CHECK(res.out.find(",oracle") != std::string::npos);
}

TEST_CASE("spectrum usage errors exit with code 2") {
  CHECK(run_cli("spectrum -n 17 -l 2 -p 0.5").exit_code == 2);
  CHECK(run_cli("spectrum -n 4 -l 5 -p 0.5").exit_code == 2);
  CHECK(run_cli("spectrum -n 4 -l 2 -p 1.5").exit_code == 2);
  CHECK(run_cli("spectrum -n 13 -l 2 -p 0.5 --oracle").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("rate of a separable input is zero") {
  const auto res = run_cli("rate -x 0 -q 0.3 -a 0.5 -N 16");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(!rows.empty());
  const auto& total = rows.back();
  REQUIRE(total.cells.size() == 3);
  CHECK(total.cells[0] == "total");
  CHECK(total.cells[1] == "");
  CHECK(std::stod(total.cells[2]) == 0.0);
}

TEST_CASE("rate of pure plus states over four copies") {
  const auto res = run_cli("rate -x 1 -q 1 -a 0.5 -N 4");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 3);  // header, i=1, total
  // R_1 = sum_l 2^-4 C(4,l) log2 C(4,l) = (8*2 + 6*log2 6)/16.
  const double r1 = (16.0 + 6.0 * std::log2(6.0)) / 16.0;
  CHECK(std::stod(rows[1].cells[2]) == doctest::Approx(r1).epsilon(1e-13));
  CHECK(std::stod(rows[2].cells[2]) ==
        doctest::Approx(r1 / 4.0).epsilon(1e-13));
}

TEST_CASE("golden rate at the reference point") {
  const auto res = run_cli("rate -x 0.8 -q 0.2 -a 0.5 -N 16");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  CHECK(std::stod(rows.back().cells[2]) ==
        doctest::Approx(0.03402344400006236).epsilon(1e-12));
}

TEST_CASE("rate usage errors") {
  CHECK(run_cli("rate -x 0.5 -q 0.5 -a 0.5 -N 3").exit_code == 2);
  CHECK(run_cli("rate -x 0.5 -N 4 --qudit 3 --variant parity").exit_code == 2);
  CHECK(run_cli("rate -x 0.5 -N 4 --variant zero").exit_code == 2);
  CHECK(run_cli("rate -x 0.5 -N 4 --qudit 3 --variant bogus").exit_code == 2);
}

TEST_CASE("qudit rate variants") {
  const auto res = run_cli("rate -x 0.9 -N 4 --qudit 3 --variant naive");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 4);  // header, i=1, i=2, total
  CHECK(std::stod(rows[2].cells[2]) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("figure sweeps are byte deterministic") {
  const auto a = run_cli("sweep --figure 3");
  const auto b = run_cli("sweep --figure 3");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  // Symmetric about alpha = 1/2.
  const auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 102);  // header + 101 grid points
  for (std::size_t t = 1; t <= 101; ++t) {
    const double lhs = std::stod(rows[t].cells[4]);
    const double rhs = std::stod(rows[102 - t].cells[4]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("figure-1 rows at q and 1-q agree") {
  const auto res = run_cli("sweep --figure 1");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 1 + 4 * 101);
  for (int curve = 0; curve < 4; ++curve) {
    const std::size_t base = 1 + curve * 101;
    for (int t = 0; t <= 100; ++t) {
      const double lhs = std::stod(rows[base + t].cells[4]);
      const double rhs = std::stod(rows[base + 100 - t].cells[4]);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("custom sweep via config file and overrides") {
  const std::string path = "cli_sweep_config.txt";
  {
    std::ofstream out(path);
    out << "swept=x\nlo=0\nhi=1\nsteps=3\nq=0.2\nN=4\n";
  }
  const auto res = run_cli("sweep --config " + path + " --set steps=5");
  std::remove(path.c_str());
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 6);  // header + 5 points (override wins)
  CHECK(rows[1].cells[0] == "0");
  CHECK(rows[5].cells[0] == "1");
  CHECK(std::stod(rows[5].cells[4]) > 0.0);
}

TEST_CASE("json output format") {
  const auto res = run_cli("--format json spectrum -n 2 -l 1 -p 0.6");
  REQUIRE(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.out);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0]["eigenvalue"].get<double>() ==
        doctest::Approx(0.34).epsilon(1e-14));
  CHECK(parsed[0]["source"] == "closed_form");
}

TEST_CASE("json output stays parseable with the oracle rows") {
  const auto res = run_cli("--format json spectrum -n 5 -l 2 -p 0.5 --oracle");
  REQUIRE(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.out);
  REQUIRE(parsed.is_object());
  CHECK(parsed["max_abs_diff"].get<double>() <= 1e-9);
  CHECK(parsed["rows"].size() > 3);
}

TEST_CASE("verify subcommand writes a report and exits zero") {
  const std::string report = "cli_verify_report.json";
  const auto res = run_cli("--output " + report +
                           " verify --max-n 5 --sections cas,characters");
  REQUIRE(res.exit_code == 0);
  std::ifstream in(report);
  REQUIRE(in.good());
  nlohmann::json parsed;
  in >> parsed;
  CHECK(parsed["overall_pass"].get<bool>());
  CHECK(parsed["checks"].size() == 6);
  std::remove(report.c_str());
}

TEST_CASE("verify rejects unknown sections") {
  CHECK(run_cli("verify --max-n 4 --sections bogus").exit_code == 2);
}
