#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("DESINC_CLI");
  REQUIRE_MESSAGE(p != nullptr, "DESINC_CLI must point at the binary");
  return p;
}

// Captures stdout by default; stderr_only reroutes so the pipe carries
// only the diagnostic stream.
RunResult run(const std::string& args, bool stderr_only = false) {
  const std::string cmd = cli_path() + " " + args +
                          (stderr_only ? " 2>&1 1>/dev/null" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> ls;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      ls.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) ls.push_back(cur);
  return ls;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fs;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fs.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fs.push_back(cur);
  return fs;
}

class TempJson {
 public:
  TempJson(const std::string& stem, const std::string& text)
      : path_(std::filesystem::temp_directory_path() / stem) {
    std::ofstream f(path_);
    f << text;
  }
  ~TempJson() { std::filesystem::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("integrate emits csv with the evaluation count") {
  const RunResult r = run("integrate ex5 --transform opt --n 32");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "transform,n,evaluations,value,rel_error");
  const auto fs = fields_of(ls[1]);
  REQUIRE(fs.size() == 5);
  CHECK(fs[0] == "opt");
  CHECK(fs[1] == "32");
  CHECK(fs[2] == "65");
  CHECK(std::strtod(fs[4].c_str(), nullptr) < 1e-9);
}

TEST_CASE("integrate emits json on request") {
  const RunResult r = run("integrate ex1 --transform de --out json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["transform"] == "de");
  CHECK(j["n"] == 64);
  CHECK(j["evaluations"] == 129);
  CHECK(j["value"].is_number());
  CHECK(j["rel_error"].get<double>() < 1e-8);
}

TEST_CASE("adaptive integration reports its error estimate") {
  const RunResult r = run("integrate ex4 --transform adaptive --out json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("estimate"));
  CHECK(j["rel_error"].get<double>() < 1e-10);
}

TEST_CASE("integrate accepts a problem file") {
  TempJson file("desinc_cli_halfline.json", R"json({
    "integrand": "exp(-x)/sqrt(x)",
    "domain": {"kind": "semi_exp"},
    "reference": 1.7724538509055159
  })json");
  const RunResult r = run("integrate " + file.str() + " --transform de");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(std::strtod(fields_of(ls[1])[4].c_str(), nullptr) < 1e-6);
}

TEST_CASE("usage failures exit with code 1") {
  CHECK(run("integrate nosuchproblem").code == 1);
  CHECK(run("integrate ex1 --transform bogus").code == 1);
  CHECK(run("integrate ex1 --wat").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("numerical failures exit with code 2") {
  CHECK(run("box --m 6 --method tensor").code == 2);
  TempJson file("desinc_cli_singular.json", R"json({
    "integrand": "1/(1+x^2)",
    "domain": {"kind": "finite", "a": 0, "b": 1},
    "singularities": [{"re": 0.5, "im": 0}]
  })json");
  CHECK(run("optimize-map " + file.str()).code == 2);
}

TEST_CASE("optimize-map solves the catalog pair in closed form") {
  const RunResult r = run("optimize-map ex5");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["u0"].get<double>() - 0.25 * 3.14159265358979323846) <=
        1e-8);
  CHECK(j["residual"].get<double>() <= 1e-10);
  CHECK(j["u"].is_array());
  CHECK(j["x"].size() == 1);
}

TEST_CASE("convergence tables cover every requested size") {
  const RunResult r = run("convergence ex5 --ns 8 16");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() >= 5);
  CHECK(ls[0] == "transform,n,evaluations,value,rel_error");
  int rows8 = 0, rows16 = 0, opt_rows = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto fs = fields_of(ls[i]);
    REQUIRE(fs.size() == 5);
    if (fs[1] == "8") ++rows8;
    if (fs[1] == "16") ++rows16;
    if (fs[0] == "opt") ++opt_rows;
  }
  CHECK(rows8 == rows16);
  CHECK(rows8 >= 2);
  CHECK(opt_rows == 2);
}

TEST_CASE("pade-poles reports pole estimates and fit diagnostics") {
  const RunResult r =
      run("pade-poles ex4 --transform de --n 32 --count 2 --out json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["poles"].is_array());
  CHECK(j["poles"].size() <= 2);
  for (const auto& z : j["poles"]) {
    CHECK(std::isfinite(z["re"].get<double>()));
    CHECK(z["im"].get<double>() > 0.0);
  }
  CHECK(j.contains("shortfall"));
  CHECK(j.contains("condition"));
  CHECK(j.contains("fit_residual"));
}

TEST_CASE("bo-solve prints the wave and a summary line") {
  const RunResult table = run("bo-solve --transform opt --n 64");
  REQUIRE(table.code == 0);
  const auto ls = lines_of(table.out);
  REQUIRE(ls.size() == 102);
  CHECK(ls[0] == "x,y_exact,y_computed");
  const RunResult diag = run("bo-solve --transform opt --n 64", true);
  const auto j = nlohmann::json::parse(diag.out);
  CHECK(j["sup_rel_error"].get<double>() < 1e-2);
  CHECK(j["newton_iterations"].get<int>() > 0);
}

TEST_CASE("box compares the tensor rule against the reduced form") {
  const RunResult r = run("box --m 2");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "method,variant,n,value");
  const auto reduced = fields_of(ls[1]);
  CHECK(reduced[0] == "reduced");
  CHECK(reduced[2] == "64");
  CHECK(std::abs(std::strtod(reduced[3].c_str(), nullptr) -
                 0.48499938727299484) < 1e-9);
  const auto disc = fields_of(ls[3]);
  CHECK(disc[0] == "discrepancy");
  CHECK(std::strtod(disc[3].c_str(), nullptr) < 1e-9);
  CHECK(run("box --m 1 --method reduced").code == 0);
}

}  // TEST_SUITE
