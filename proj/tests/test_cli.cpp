#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("SWITCHRUN_CLI");
  REQUIRE(p != nullptr);
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/switchrun_test_") + name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("stats on 0101") {
  auto r = run("stats " + write_temp("a.txt", "0101"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["N"] == 4);
  CHECK(j["M"] == 3);
  CHECK(j["Z"] == 1);
  CHECK(j["p_value"] == 0.125);
  CHECK(j["p_value_exact"] == "1/8");
}

TEST_CASE("stats on 0000") {
  auto r = run("stats " + write_temp("b.txt", "0000"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["M"] == 0);
  CHECK(j["Z"] == 0);
  CHECK(j["p_value"] == 1.0);
}

TEST_CASE("stats parse failure exits 2") {
  auto r = run("stats " + write_temp("c.txt", "01x1"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("stats raw format") {
  auto r = run("stats --format raw " + write_temp("d.bin", std::string("\xA0", 1)));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["N"] == 8);
  CHECK(j["Z"] == 1);
}

TEST_CASE("dist csv matches the N=5 table and round-trips") {
  auto r = run("dist --n 5 --statistic M --out csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "value,count,probability");
  const long expected[] = {2, 14, 10, 4, 2};
  for (int k = 0; k < 5; ++k) {
    REQUIRE(std::getline(lines, line));
    std::istringstream row(line);
    std::string v, c, p;
    std::getline(row, v, ',');
    std::getline(row, c, ',');
    std::getline(row, p, ',');
    CHECK(std::stol(v) == k);
    CHECK(std::stol(c) == expected[k]);
    char rt[64];
    std::snprintf(rt, sizeof rt, "%.17g", std::stod(p));
    CHECK(p == rt);  // 17-significant-digit round trip
  }
}

TEST_CASE("dist json for Z at N=4") {
  auto r = run("dist --n 4 --statistic Z --out json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 5);
  const char* expected[] = {"1", "7", "5", "2", "1"};
  for (int k = 0; k < 5; ++k) CHECK(j["rows"][k]["count"] == expected[k]);
}

TEST_CASE("dist rejects out-of-range N") {
  CHECK(run("dist --n 5000 --statistic M").exit_code == 2);
}

TEST_CASE("bounds at (8,4): paper sandwich fails, corrected holds") {
  auto r = run("bounds --n 8 --k 4 --variant both");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["exact_rational"] == "81/128");
  REQUIRE(j["variants"].size() == 2);
  CHECK(j["variants"][0]["variant"] == "paper");
  CHECK(j["variants"][0]["sandwich"] == false);
  CHECK(j["variants"][1]["variant"] == "corrected");
  CHECK(j["variants"][1]["sandwich"] == true);

  CHECK(run("bounds --n 8 --k 4 --variant paper --strict").exit_code == 1);
  CHECK(run("bounds --n 8 --k 4 --variant corrected --strict").exit_code == 0);
  CHECK(run("bounds --n 7 --k 4").exit_code == 2);
}

TEST_CASE("verify tables suite passes") {
  auto r = run("verify --suite tables");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["tables"].size() == 8);
  for (const auto& e : j["tables"]) CHECK(e["match"] == true);
}

TEST_CASE("simulate output is byte-identical across runs and workers") {
  const std::string args =
      "simulate --seed 42 --replicas 16 --lengths 64,256 --epsilon 1 --out csv";
  auto a = run(args + " --workers 1");
  auto b = run(args + " --workers 1");
  auto c = run(args + " --workers 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(run("simulate --replicas 0 --lengths 64").exit_code == 2);
}

TEST_CASE("transform emits Y and the off-by-one note") {
  auto r = run("transform " + write_temp("e.txt", "0101"));
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string y;
  std::getline(lines, y);
  CHECK(y == "0000");
  std::ostringstream rest;
  rest << lines.rdbuf();
  json j = json::parse(rest.str());
  CHECK(j["M_x"] == 3);
  CHECK(j["constant_run_y"] == 4);

  auto r2 = run("transform " + write_temp("f.txt", "0000"));
  CHECK(r2.out.substr(0, 5) == "0101\n");
}

TEST_CASE("schedule partial sums") {
  auto r = run("schedule --kind gamma --expr clog:1 --nmax 4");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  double last = j["partial_sums"].back()["sum"];
  CHECK_THAT(last, Catch::Matchers::WithinAbs(2.0833333333333335, 1e-12));

  auto r2 = run("schedule --kind delta --expr clog:2 --nmax 4");
  double last2 = json::parse(r2.out)["partial_sums"].back()["sum"];
  CHECK_THAT(last2, Catch::Matchers::WithinAbs(1.4236111111111112, 1e-12));

  CHECK(run("schedule --kind gamma --expr const:8 --nmax 8").exit_code == 0);
  CHECK(run("schedule --kind gamma --expr const:0 --nmax 8").exit_code == 2);
  CHECK(run("schedule --kind gamma --expr bogus --nmax 8").exit_code == 2);
}
