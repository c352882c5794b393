#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using descents::Rational;
using descents::ratio;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = descents::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const std::vector<std::string>& args) {
  Outcome o = call(args);
  REQUIRE(o.code == 0);
  return nlohmann::json::parse(o.out);
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("descents-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("table output") {
    Outcome o = call({"table", "eulerian", "--n", "4", "--format", "csv"});
    CHECK(o.code == 0);
    CHECK(o.out.find("4,0,1\n4,1,11\n4,2,11\n4,3,1\n") != std::string::npos);
    CHECK(o.out.rfind("n,k,value\n", 0) == 0);
    auto j = json_of({"table", "matchings", "--n", "2", "--format", "json"});
    CHECK(j["rows"][1]["n"] == 4);
    CHECK(j["rows"][1]["values"] == nlohmann::json::array({"0", "1", "1", "1"}));
    Outcome conj = call({"table", "conjugacy", "--cycle-type", "0,2"});
    CHECK(conj.code == 0);
    CHECK(conj.out == "n,k,value\n4,0,0\n4,1,1\n4,2,1\n4,3,1\n");
  }

  TEST_CASE("check verdicts") {
    CHECK(call({"check", "matchings", "--n", "4", "--oracle"}).code == 0);
    CHECK(call({"check", "eulerian", "--n", "7"}).code == 0);
    // J_4 is not real-rooted
    Outcome j = call({"check", "matchings", "--n", "2", "--real-roots"});
    CHECK(j.code == 1);
    CHECK(nlohmann::json::parse(j.out)["pass"] == false);
    CHECK(call({"check", "matchings", "--n", "14", "--log-concave"}).code == 1);
    CHECK(call({"check", "eulerian", "--n", "30", "--martingale"}).code == 0);
  }

  TEST_CASE("derive") {
    auto j = json_of({"derive", "--d", "1", "--g", "1,1"});
    CHECK(j["verdict"]["representable"] == true);
    auto m = json_of({"derive", "--d", "2", "--g", "2n/(2n+2),1/(2n+2),1/(2n+2)", "--n", "4"});
    CHECK(m["verdict"]["representable"] == true);
    auto s = nlohmann::json::parse(call({"derive", "--d", "1", "--g", "-1,1", "--n", "4"}).out);
    CHECK(s["verdict"]["representable"] == false);
    CHECK(s["verdict"]["reason"] == "negative_coefficient");
    CHECK(call({"derive", "--d", "1", "--g", "-1,1", "--n", "4"}).code == 1);
    // g must have degree d at every step
    CHECK(call({"derive", "--d", "1", "--g", "1,0", "--n", "4"}).code == 2);
    CHECK(call({"derive", "--d", "2", "--g", "1,1"}).code == 2);
  }

  TEST_CASE("moments") {
    auto j = json_of({"moments", "eulerian", "--n", "3", "--order", "3"});
    CHECK(j["table_value"] == "2");
    CHECK(j["closed_form"]["match"] == true);
    auto v = json_of({"moments", "inversions", "--n", "3", "--order", "2", "--central"});
    CHECK(v["table_value"] == "11/12");
    auto cov = json_of({"moments", "two_sided", "--n", "3"});
    CHECK(cov["covariance"] == "1/3");
    auto l = json_of({"moments", "longest_alt", "--n", "8", "--order", "2", "--central"});
    CHECK(l["comparison"]["matches_8n/45-13/180"] == true);
    CHECK(l["comparison"]["matches_8n/45-13/80"] == false);
    CHECK(call({"moments", "eulerian", "--n", "3", "--order", "5"}).code == 2);
  }

  TEST_CASE("clt") {
    auto j = json_of({"clt", "eulerian", "--n", "16"});
    CHECK(j["mean"] == "15/2");
    CHECK(j["distance"].get<double>() == doctest::Approx(0.16278796388235317).epsilon(1e-9));
  }

  TEST_CASE("sampling is reproducible") {
    Outcome a = call({"sample", "eulerian", "--n", "50", "--paths", "500", "--seed", "7"});
    Outcome b = call({"--threads", "4", "sample", "eulerian", "--n", "50", "--paths", "500", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("path,final_value\n", 0) == 0);
    Outcome c = call({"sample", "eulerian", "--n", "50", "--paths", "500", "--seed", "8"});
    CHECK(a.out != c.out);
    auto j = json_of({"sample", "cycles", "--n", "10", "--paths", "20", "--seed", "1", "--format", "json"});
    CHECK(j["finals"].size() == 20);
  }

  TEST_CASE("cache round trip") {
    TempDir dir;
    const std::string d = dir.path.string();
    Outcome fresh = call({"--no-cache", "table", "second_order", "--n", "12"});
    Outcome first = call({"--cache-dir", d, "table", "second_order", "--n", "12"});
    const fs::path file = dir.path / "table-second_order-N12-v1.json";
    REQUIRE(fs::exists(file));
    Outcome second = call({"--cache-dir", d, "table", "second_order", "--n", "12"});
    CHECK(first.out == fresh.out);
    CHECK(second.out == fresh.out);
    // the cached file is really what is read back
    nlohmann::json j;
    {
      std::ifstream in(file);
      j = nlohmann::json::parse(in);
    }
    j["rows"][0]["values"][1] = "5";
    {
      std::ofstream out(file);
      out << j.dump();
    }
    CHECK(call({"--cache-dir", d, "table", "second_order", "--n", "12"}).out != fresh.out);
    CHECK(call({"--cache-dir", d, "--no-cache", "table", "second_order", "--n", "12"}).out == fresh.out);
    Outcome bi1 = call({"--cache-dir", d, "bitable", "--n", "5"});
    Outcome bi2 = call({"--cache-dir", d, "bitable", "--n", "5"});
    CHECK(bi1.out == bi2.out);
  }

  TEST_CASE("errors and exit codes") {
    Outcome unknown = call({"table", "descent", "--n", "3"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("descent") != std::string::npos);
    Outcome big = call({"table", "eulerian", "--n", "5000"});
    CHECK(big.code == 2);
    CHECK(big.err.find("max_n") != std::string::npos);
    Outcome oracle = call({"--max-objects", "100", "check", "eulerian", "--n", "6", "--oracle"});
    CHECK(oracle.code == 2);
    CHECK(oracle.err.find("max_objects") != std::string::npos);
    CHECK(call({"table", "eulerian"}).code == 2);
    CHECK(call({"table", "eulerian", "--n", "0"}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"table", "conjugacy", "--cycle-type", "0,-1"}).code == 2);
    CHECK(call({"sample", "eulerian", "--n", "5", "--paths", "0", "--seed", "1"}).code == 2);
    CHECK(call({"--help"}).code == 0);
  }

  TEST_CASE("expression parser") {
    using descents::cli::parse_expression;
    CHECK(parse_expression("2n/(2n+2)")(3) == ratio(3, 4));
    CHECK(parse_expression("-n + 4")(1) == 3);
    CHECK(parse_expression("3(n+1)")(2) == 9);
    CHECK(parse_expression("1/2")(0) == ratio(1, 2));
    CHECK(parse_expression(" 7 ")(5) == 7);
    CHECK(parse_expression("n*n - 2*n")(5) == 15);
    CHECK_THROWS_AS(parse_expression("2n+"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("(n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("k"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("1/(n-1)")(1), std::invalid_argument);
  }
}
