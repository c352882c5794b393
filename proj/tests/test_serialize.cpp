#include <sstream>

#include "doctest.h"

#include "descents/arrays.hpp"
#include "descents/kernels.hpp"
#include "descents/serialize.hpp"

using namespace descents;

TEST_SUITE("serialize") {
  TEST_CASE("table csv") {
    std::ostringstream os;
    write_csv(os, build_rows(Statistic::Eulerian, 3));
    CHECK(os.str() == "n,k,value\n1,0,1\n2,0,1\n2,1,1\n3,0,1\n3,1,4\n3,2,1\n");
    std::ostringstream cyc;
    write_csv(cyc, build_rows(Statistic::Cycles, 2));
    CHECK(cyc.str() == "n,k,value\n1,1,1\n2,1,1\n2,2,1\n");
  }

  TEST_CASE("bivariate csv") {
    std::ostringstream os;
    write_csv(os, build_bivariate(2));
    CHECK(os.str() == "n,k,l,value\n1,0,0,1\n2,0,0,1\n2,0,1,0\n2,1,0,0\n2,1,1,1\n");
  }

  TEST_CASE("json keeps big integers exact") {
    auto t = build_rows(Statistic::TypeB, 30);
    Json j = to_json(t);
    CHECK(j["schema"] == kSchemaVersion);
    CHECK(j["statistic"] == "type_b");
    CHECK(j["rows"][29]["values"][15].is_string());
    CHECK(j["rows"][29]["values"][15].get<std::string>() == t.row(30).at(15).get_str());
  }

  TEST_CASE("json round trips") {
    for (Statistic s : {Statistic::Eulerian, Statistic::Cycles, Statistic::Matchings, Statistic::LongestAlt}) {
      auto t = build_rows(s, 25);
      auto back = descent_array_from_json(Json::parse(to_json(t).dump()));
      CHECK(back.statistic == t.statistic);
      CHECK(back.rows == t.rows);
    }
    DescentArray conj = build_rows(StatisticId{Statistic::Conjugacy, CycleType{{1, 2}}}, 5);
    auto back = descent_array_from_json(to_json(conj));
    CHECK(back.statistic == conj.statistic);
    CHECK(back.rows == conj.rows);
    auto bi = build_bivariate(9);
    CHECK(bivariate_array_from_json(Json::parse(to_json(bi).dump())).tables == bi.tables);
  }

  TEST_CASE("malformed json is rejected") {
    Json j = to_json(build_rows(Statistic::Eulerian, 3));
    j["schema"] = 99;
    CHECK_THROWS(descent_array_from_json(j));
    CHECK_THROWS(descent_array_from_json(Json::parse(R"({"schema":1})")));
  }

  TEST_CASE("sample output") {
    SampleResult r;
    r.N = 4;
    r.finals = {1, 2, 3};
    std::ostringstream os;
    write_sample_csv(os, r);
    CHECK(os.str() == "path,final_value\n0,1\n1,2\n2,3\n");
    Json s = sample_summary(r);
    CHECK(s["mean_exact"] == "2");
    CHECK(s["sample_variance_exact"] == "1");
  }

  TEST_CASE("reports") {
    KsReport k;
    k.n = 3;
    k.mean = 1;
    k.variance = ratio(1, 3);
    k.distance = 0.25;
    Json j = to_json(k);
    CHECK(j["mean"] == "1");
    CHECK(j["variance"] == "1/3");
    CHECK(j["distance"].is_number_float());
    RepresentabilityVerdict v;
    v.failure = RepresentabilityFailure{RepresentabilityFailure::Reason::DiagonalSum, 1, 2, 0, "x"};
    Json vj = to_json(v);
    CHECK(vj["representable"] == false);
  }
}
