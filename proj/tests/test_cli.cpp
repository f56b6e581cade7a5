#include "catch_amalgamated.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

using Catch::Approx;
using namespace entire;
using cli::RunConfig;

namespace {

RunConfig config(std::string command, std::vector<std::string> spaces, std::vector<std::string> functions = {},
                 Index n_max = 2000) {
  RunConfig c;
  c.command = std::move(command);
  c.spaces = std::move(spaces);
  c.functions = std::move(functions);
  c.n_max = n_max;
  return c;
}

io::Json parse_ok(const cli::RunResult& r) {
  INFO(r.error);
  REQUIRE(r.exit_code == 0);
  return io::Json::parse(r.output);
}

io::Json parse_error(const cli::RunResult& r, int code) {
  REQUIRE(r.exit_code == code);
  REQUIRE(r.output.empty());
  REQUIRE(r.error.find('\n') == std::string::npos);
  return io::Json::parse(r.error);
}

}  // namespace

TEST_CASE("estimate command", "[cli]") {
  auto c = config("estimate", {"hardy:p=2"}, {"synthetic:rho=1,sigma=1"});
  c.format = "json";
  const auto j = parse_ok(cli::run(c));
  REQUIRE(j["verdict"] == "entire");
  REQUIRE(j["rho_hat"].get<double>() == Approx(1.0).margin(0.05));
  REQUIRE(j["sigma_hat"].get<double>() == Approx(1.0).margin(0.05));
  REQUIRE(j["cross_check"]["pass"].get<bool>());

  c.format = "table";
  REQUIRE(cli::run(c).output.find("rho_hat") != std::string::npos);
  c.format = "csv";
  REQUIRE(cli::run(c).output.rfind("n,root,rho_n,sigma_n\n", 0) == 0);
}

TEST_CASE("norms command", "[cli]") {
  auto c = config("norms", {"bmoa"}, {}, 50);
  const std::string csv = cli::run(c).output;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "n,norm,lower,upper,kind");
  int rows = 0;
  while (std::getline(in, line)) {
    // n = 0 is the constant 1, exact; every n >= 1 is a bracket.
    REQUIRE(line.substr(line.rfind(',') + 1) == (rows == 0 ? "exact" : "bracketed"));
    ++rows;
    const double lo = std::stod(line.substr(line.find(',', line.find(',') + 1) + 1));
    REQUIRE(lo >= std::sqrt(2.0 / M_PI) - 1e-6);
    REQUIRE(lo <= 2.0 + 1e-6);
  }
  REQUIRE(rows == 51);

  auto m = config("norms", {"hardy", "bergman"}, {}, 3);
  const std::string two = cli::run(m).output;
  REQUIRE(two.rfind("space,n,norm", 0) == 0);
  m.format = "json";
  REQUIRE(parse_ok(cli::run(m)).size() == 2);

  auto v = config("norms", {"bloch"}, {}, 3);
  v.paper_variants = true;
  v.format = "json";
  REQUIRE(parse_ok(cli::run(v))["entries"][2].contains("log_displayed"));
}

TEST_CASE("integer command", "[cli]") {
  auto c = config("integer", {"hardy:p=2"}, {"exp:lambda=1"}, 20);
  const auto j = parse_ok(cli::run(c));
  for (const auto& e : j["entries"]) {
    if (e["n"].get<Index>() >= 3) REQUIRE(e["log_obstruction"].get<double>() >= std::log(0.5) - 1e-15);
  }
  REQUIRE(j["rounded"].dump() == "[[1,0],[1,0],[1,0]]");

  auto bmoa = config("integer", {"bmoa"}, {"exp:lambda=1"}, 5);
  const auto nb = parse_ok(cli::run(bmoa));
  REQUIRE_FALSE(nb["separable"].get<bool>());
  REQUIRE(nb["entries"][4]["log_error"].is_null());

  auto lac = config("integer", {"bergman:p=2"});
  lac.lacunary = 3;
  REQUIRE(parse_ok(cli::run(lac))["exponents"].dump() == "[3,15,63]");

  auto inf = config("integer", {"hardy:p=2"});
  inf.lacunary = 2;
  REQUIRE(parse_error(cli::run(inf), cli::kInfeasible)["error"] == "infeasible_space");
}

TEST_CASE("matrix command", "[cli]") {
  auto c = config("matrix", {"bergman:p=2", "hardy:p=2"}, {"exp:lambda=1", "cossqrt", "geometric:r=0.5"}, 600);
  const std::string serial = cli::run(c).output;
  c.jobs = 4;
  REQUIRE(cli::run(c).output == serial);

  std::istringstream in(serial);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 6);
  REQUIRE(rows[0].rfind("\"bergman:p=2\",\"cossqrt\"", 0) == 0);
  REQUIRE(rows[5].rfind("\"hardy:p=2\",\"geometric:r=0.5\",not_entire", 0) == 0);

  c.format = "json";
  const auto j = parse_ok(cli::run(c));
  for (const auto& cell : j["cells"]) REQUIRE(cell["sandwich_violations"] == 0);
}

TEST_CASE("exit codes and error records", "[cli]") {
  SECTION("parse error names the parameter") {
    const auto e = parse_error(cli::run(config("norms", {"hardy:p=0"})), cli::kConfig);
    REQUIRE(e["error"] == "parse_error");
    REQUIRE(e["parameter"] == "p");
  }
  SECTION("unknown command") { parse_error(cli::run(config("plot", {"hardy"})), cli::kConfig); }
  SECTION("wrong format") {
    auto c = config("norms", {"hardy"});
    c.format = "table";
    parse_error(cli::run(c), cli::kConfig);
  }
  SECTION("tail that never settles") {
    auto c = config("integer", {"bergman"}, {"synthetic:rho=1,sigma=1000"}, 5);
    const auto e = parse_error(cli::run(c), cli::kAccuracy);
    REQUIRE(e["error"] == "accuracy_error");
    REQUIRE(e.contains("best_estimate"));
  }
  SECTION("coefficient beyond 64-bit rounding") {
    auto c = config("integer", {"hardy"}, {"poly:1e19"}, 1);
    REQUIRE(parse_error(cli::run(c), cli::kAccuracy)["error"] == "overflow_error");
  }
  SECTION("missing function") { parse_error(cli::run(config("approx", {"hardy"})), cli::kConfig); }
}

TEST_CASE("config overrides", "[cli]") {
  RunConfig c;
  cli::apply_config(c, io::Json::parse(R"({"space": "bergman", "n_max": 7, "rho_tolerance": 0.1})"));
  REQUIRE(c.spaces == std::vector<std::string>{"bergman"});
  REQUIRE(c.n_max == 7);
  REQUIRE(c.rho_tolerance == 0.1);
  REQUIRE_THROWS_AS(cli::apply_config(c, io::Json::parse(R"({"nmax": 7})")), cli::ConfigError);
  REQUIRE_THROWS_AS(cli::apply_config(c, io::Json::parse(R"({"n_max": "seven"})")), cli::ConfigError);
}

TEST_CASE("output files and the output directory override", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path() / "entire_cli_test";
  std::filesystem::create_directories(dir);
  ::setenv("ENTIRE_OUTPUT_DIR", dir.c_str(), 1);
  auto c = config("approx", {"hardy"}, {"geometric:r=0.5"}, 4);
  c.output = "approx.csv";
  const auto r = cli::run(c);
  ::unsetenv("ENTIRE_OUTPUT_DIR");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.empty());
  std::ifstream in(dir / "approx.csv");
  std::string header;
  std::getline(in, header);
  REQUIRE(header == "n,lower,exact,upper");
  std::filesystem::remove_all(dir);
}
