#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "towerforge/cli.hpp"
#include "towerforge/report.hpp"

using namespace tf;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify exit codes") {
  auto ok = run({"verify", "--p", "5", "--q", "3", "--qprime", "7"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  auto invalid = run({"verify", "--p", "13", "--q", "3", "--qprime", "7"});
  CHECK(invalid.code == 2);
  CHECK(invalid.err.find("symbol_condition") != std::string::npos);

  auto usage = run({"verify", "--p", "5"});
  CHECK(usage.code == 64);

  auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 64);
}

TEST_CASE("verify json payload") {
  auto res = run({"verify", "--p", "5", "--q", "3", "--qprime", "7",
                  "--format", "json", "--no-timestamp"});
  REQUIRE(res.code == 0);
  Json j = Json::parse(res.out);
  CHECK(j["tool"] == "towerforge");
  CHECK_FALSE(j.contains("timestamp"));
  CHECK(j["pass"] == true);
  CHECK(j["payload"]["n"] == 1);
  CHECK(j["payload"]["gamma_order"] == 32);
  CHECK(j["payload"]["cl2_k"] == "(2,2,2)");
  CHECK(j["payload"]["case"] == "A");
  bool found_t1_h4 = false;
  for (const auto& c : j["payload"]["checks"]) {
    if (c["table"] == "T1" && c["row"] == 4 && c["col"] == "h_j") {
      found_t1_h4 = true;
      CHECK(c["expected"] == "16");
      CHECK(c["computed"] == "16");
      CHECK(c["pass"] == true);
    }
  }
  CHECK(found_t1_h4);
}

TEST_CASE("reports are deterministic without the timestamp") {
  std::vector<std::string> args = {"verify", "--p", "5", "--q", "3",
                                   "--qprime", "23", "--format", "json",
                                   "--no-timestamp"};
  auto a = run(args);
  auto b = run(args);
  CHECK(a.out == b.out);
  // with the timestamp only that field may differ
  auto c = run({"verify", "--p", "5", "--q", "3", "--qprime", "23",
                "--format", "json"});
  Json jc = Json::parse(c.out);
  CHECK(jc.contains("timestamp"));
}

TEST_CASE("envelope round-trips losslessly") {
  auto res = run({"verify", "--p", "5", "--q", "3", "--qprime", "7",
                  "--format", "json", "--no-timestamp"});
  Json parsed = Json::parse(res.out);
  ReportEnvelope env = envelope_from_json(parsed);
  CHECK(envelope_json(env).dump(2) + "\n" == res.out);
}

TEST_CASE("verify csv has one row per check") {
  auto res = run({"verify", "--p", "5", "--q", "3", "--qprime", "7",
                  "--format", "csv"});
  REQUIRE(res.code == 0);
  std::istringstream is(res.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "p,q,qprime,case,n,table,row,col,expected,computed,pass");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  TowerCertificate cert = verify_tower(5, 3, 7);
  CHECK(rows == static_cast<int>(cert.checks.size()));
}

TEST_CASE("scan") {
  auto res = run({"scan", "--max", "50", "--format", "csv", "--no-timestamp"});
  CHECK(res.code == 0);
  std::istringstream is(res.out);
  std::string line;
  int rows = 0;
  bool summary = false;
  while (std::getline(is, line)) {
    if (line.starts_with("#")) {
      summary = true;
      CHECK(line.find("triples=24") != std::string::npos);
      CHECK(line.find("failed=0") != std::string::npos);
    } else if (!line.empty() && !line.starts_with("p,")) {
      ++rows;
    }
  }
  CHECK(rows == 24);
  CHECK(summary);

  auto missing = run({"scan"});
  CHECK(missing.code == 64);
}

TEST_CASE("scan csv n column is 1 exactly on case-A rows") {
  auto res = run({"scan", "--max", "50", "--format", "csv", "--no-timestamp",
                  "--parallel", "2"});
  REQUIRE(res.code == 0);
  std::istringstream is(res.out);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.empty() || line.starts_with("#")) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() >= 5);
    bool case_a = fields[3] == "A";
    bool n_one = fields[4] == "1";
    CHECK(case_a == n_one);
  }
}

TEST_CASE("out flag writes the report to a file") {
  std::string path = "/tmp/towerforge_test_out.json";
  std::remove(path.c_str());
  auto res = run({"verify", "--p", "5", "--q", "3", "--qprime", "7",
                  "--format", "json", "--no-timestamp", "--out", path});
  REQUIRE(res.code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == res.out);
  std::remove(path.c_str());
}

TEST_CASE("scan bound is capped by the environment limit") {
  auto res = run({"scan", "--max", "100000"});
  CHECK(res.code == 64);
  CHECK(res.err.find("TOWERFORGE_SCAN_LIMIT") != std::string::npos);
}

TEST_CASE("classgroup command") {
  auto res = run({"classgroup", "--disc", "-420", "--format", "json",
                  "--no-timestamp"});
  REQUIRE(res.code == 0);
  Json j = Json::parse(res.out);
  CHECK(j["payload"]["h"] == 8);
  CHECK(j["payload"]["invariants"] == "(2,2,2)");
  auto bad = run({"classgroup", "--disc", "-12"});
  CHECK(bad.code == 2);
}

TEST_CASE("gamma command") {
  auto res = run({"gamma", "--n", "2", "--format", "json", "--no-timestamp"});
  REQUIRE(res.code == 0);
  Json j = Json::parse(res.out);
  CHECK(j["payload"]["order"] == 64);
  CHECK(j["payload"]["ab"] == "(2,2,2)");
  CHECK(j["payload"]["derived_ab"] == "(2,4)");
  CHECK(j["payload"]["index2_subgroups"].size() == 7);
  CHECK(j["payload"]["adopted_consistent"] == true);
  auto bad = run({"gamma", "--n", "0"});
  CHECK(bad.code == 2);
}

TEST_CASE("unit command") {
  auto res = run({"unit", "--m", "105", "--format", "json", "--no-timestamp"});
  REQUIRE(res.code == 0);
  Json j = Json::parse(res.out);
  CHECK(j["payload"]["unit"] == "41+4*sqrt(105)");
  CHECK(j["payload"]["norm"] == 1);
  auto bad = run({"unit", "--m", "12"});
  CHECK(bad.code == 2);
}

TEST_CASE("help exits cleanly") {
  auto res = run({"--help"});
  CHECK(res.code == 0);
  CHECK(res.out.find("verify") != std::string::npos);
}
