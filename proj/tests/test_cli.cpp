#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nsaxi::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) v.push_back(item);
  return v;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("solve matches the golden file byte for byte") {
  const Result r = call({"solve", "--c1", "0", "--c2", "0", "--c3", "0", "--gamma", "1", "--grid", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(NSAXI_GOLDEN_DIR "/solve_landau.csv"));
}

TEST_CASE("solve grid") {
  const auto g = nsaxi::cli::solve_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g[2] == 0.0);
  CHECK(g[0] == -g[4]);
  CHECK(g[0] > -1.0);
}

TEST_CASE("solve on the boundary gives the linear profile") {
  const Result r = call({"solve", "--c3", "-4", "--gamma", "0", "--grid", "7"});
  REQUIRE(r.code == 0);
  const auto lines = split(r.out, '\n');
  REQUIRE(lines.size() == 8);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    CHECK(std::stod(f[1]) == doctest::Approx(-4 * std::stod(f[0])).epsilon(1e-12));
  }
}

TEST_CASE("gamma command") {
  const Result r = call({"gamma", "--c1", "0", "--c2", "0", "--c3", "0"});
  REQUIRE(r.code == 0);
  const auto row = split(split(r.out, '\n').at(1), ',');
  CHECK(std::stod(row.at(4)) == doctest::Approx(2).epsilon(1e-9));
  CHECK(std::stod(row.at(5)) == doctest::Approx(-2).epsilon(1e-9));

  const Result b = call({"gamma", "--c3", "-4"});
  REQUIRE(b.code == 0);
  const auto brow = split(split(b.out, '\n').at(1), ',');
  CHECK(std::abs(std::stod(brow.at(4))) < 1e-12);
  CHECK(std::abs(std::stod(brow.at(5))) < 1e-12);

  CHECK(call({"gamma", "--c3", "-5"}).code == 2);
}

TEST_CASE("usage errors exit 1") {
  CHECK(call({"solve", "--bogus"}).code == 1);
  CHECK(call({"solve", "--grid", "abc"}).code == 1);
  CHECK(call({"solve", "--rtol", "-1", "--gamma", "0"}).code == 1);
  CHECK(call({}).code == 1);
}

TEST_CASE("outside I exits 2") {
  CHECK(call({"solve", "--gamma", "3"}).code == 2);
  CHECK(call({"solve", "--c1", "-2", "--gamma", "0"}).code == 2);
  CHECK(call({"classify", "--c3", "-5", "--gamma", "0"}).code == 2);
}

TEST_CASE("config file") {
  const std::string path = temp_path("nsaxi_test.cfg");
  {
    std::ofstream f(path);
    f << "rtol = -1e-9\n";
  }
  CHECK(call({"verify", "--suite", "landau", "--config", path}).code == 1);
  {
    std::ofstream f(path);
    f << "no_such_key = 3\n";
  }
  CHECK(call({"solve", "--gamma", "0", "--config", path}).code == 1);
  {
    std::ofstream f(path);
    f << "grid = 3\n";
  }
  const Result r = call({"solve", "--gamma", "0", "--config", path});
  CHECK(r.code == 0);
  CHECK(split(r.out, '\n').size() == 4);
  CHECK(split(call({"solve", "--gamma", "0", "--config", path, "--grid", "4"}).out, '\n').size() == 5);
  std::remove(path.c_str());
}

TEST_CASE("surface records") {
  const Result one = call({"surface", "--range", "0:0:1", "--range", "0:0:1", "--range", "0:0:1"});
  REQUIRE(one.code == 0);
  auto lines = split(one.out, '\n');
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "c1,c2,c3,c3_bar,gamma_plus,gamma_minus");
  const auto row = split(lines[1], ',');
  CHECK(std::stod(row[4]) == doctest::Approx(2).epsilon(1e-9));
  CHECK(std::stod(row[5]) == doctest::Approx(-2).epsilon(1e-9));

  const Result bd = call({"surface", "--c3", "-4"});
  REQUIRE(bd.code == 0);
  const auto brow = split(split(bd.out, '\n').at(1), ',');
  CHECK(std::stod(brow[4]) == std::stod(brow[5]));

  const Result out = call({"surface", "--range", "0:0:1", "--range", "0:0:1", "--range", "-5:-5:1"});
  CHECK(out.code == 0);
  const auto orow = split(split(out.out, '\n').at(1), ',');
  CHECK(orow[4] == "null");
  CHECK(orow[5] == "null");
}

TEST_CASE("surface output is deterministic under parallel evaluation") {
  const std::vector<std::string> base{"surface", "--range", "-0.5:1:3", "--range", "0:2:3", "--range", "0:1:2"};
  auto par = base;
  par.insert(par.end(), {"--jobs", "4"});
  const Result a = call(base), b = call(par);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(split(a.out, '\n').size() == 19);
}

TEST_CASE("json round trip") {
  const Result r = call({"solve", "--gamma", "0.5", "--grid", "9", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["config"]["grid"] == 9);
  REQUIRE(doc["records"].size() == 9);

  const Result csv = call({"solve", "--gamma", "0.5", "--grid", "9"});
  const auto lines = split(csv.out, '\n');
  for (std::size_t i = 0; i < 9; ++i) {
    const auto f = split(lines[i + 1], ',');
    CHECK(doc["records"][i]["x"].get<double>() == std::stod(f[0]));
    CHECK(doc["records"][i]["U"].get<double>() == std::stod(f[1]));
    CHECK(doc["records"][i]["p"].get<double>() == std::stod(f[5]));
  }
}

TEST_CASE("verify filter and report") {
  const std::string path = temp_path("nsaxi_report.json");
  const Result r = call({"verify", "--suite", "foliation", "--out", path});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(path));
  REQUIRE_FALSE(doc["records"].empty());
  for (const auto& rec : doc["records"]) {
    CHECK(rec["name"].get<std::string>().rfind("foliation", 0) == 0);
    CHECK(rec["passed"] == true);
  }
  std::remove(path.c_str());
  CHECK(call({"verify", "--suite", "nope"}).code == 1);
}

TEST_CASE("field command") {
  const Result r = call({"field", "--gamma", "1", "--grid", "3", "--range", "1:2:2"});
  REQUIRE(r.code == 0);
  const auto lines = split(r.out, '\n');
  CHECK(lines[0] == "r,x,u_r,u_theta,u_phi,p");
  CHECK(lines.size() == 7);
}
