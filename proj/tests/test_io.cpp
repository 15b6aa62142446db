#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fluidq/io.hpp"

using namespace fluidq;
using nlohmann::json;

TEST_CASE("model documents round-trip", "[io]") {
  for (const auto& m : {VarianceModel::fbm(0.7), VarianceModel::power_sum(0.4, 0.7, 2.0, 0.5),
                        VarianceModel::power_ratio(0.7, 0.4, 3.0)})
    REQUIRE(model_from_json(to_json(m)) == m);
  REQUIRE(model_from_json(json::parse(R"({"kind":"power_sum","lambda0":0.4,"alpha_inf":0.7})")) ==
          VarianceModel::power_sum(0.4, 0.7));
  REQUIRE_THROWS(model_from_json(json::parse(R"({"kind":"power_sum","lambda0":0.7,"alpha_inf":0.4})")));
  REQUIRE_THROWS(model_from_json(json::parse(R"({"kind":"levy"})")));
  REQUIRE_THROWS(model_from_json(json::parse(R"({"kind":"fbm"})")));
  REQUIRE_THROWS(model_from_json(json::parse("[1,2]")));
}

TEST_CASE("config documents", "[io]") {
  const auto doc = json::parse(R"({
    "model": {"kind": "fbm", "hurst": 0.7},
    "regime": "light", "c_values": [1, 4], "time_points": [0, 1],
    "replications": 100, "points_per_unit": 32, "kappa": 10, "master_seed": 9
  })");
  const auto cfg = config_from_json(doc);
  REQUIRE(cfg.model == VarianceModel::fbm(0.7));
  REQUIRE(cfg.regime == Regime::Light);
  REQUIRE(cfg.c_values == std::vector<double>{1.0, 4.0});
  REQUIRE(cfg.replications == 100);
  REQUIRE(cfg.points_per_unit == 32);
  REQUIRE(cfg.master_seed == 9);
  REQUIRE_THROWS(config_from_json(json::parse(R"({"regime":"light"})")));
  const auto fallback = VarianceModel::fbm(0.3);
  REQUIRE(config_from_json(json::parse(R"({"regime":"light"})"), &fallback).model == fallback);
}

TEST_CASE("load_json reports missing and malformed files", "[io]") {
  REQUIRE_THROWS_WITH(load_json("/nonexistent/fluidq.json"), Catch::Matchers::ContainsSubstring("cannot open"));
  const std::string path = "fluidq_io_malformed.json";
  std::ofstream(path) << "{\"kind\": ";
  REQUIRE_THROWS_WITH(load_json(path), Catch::Matchers::ContainsSubstring("malformed"));
  std::remove(path.c_str());
}

TEST_CASE("convergence CSV layout", "[io]") {
  ConvergenceReport rep;
  rep.time_points = {0.0, 1.0};
  rep.increment_pairs = {{0.0, 1.0}};
  CellResult cell;
  cell.c = 0.5;
  cell.delta = 4.0;
  cell.ks_by_timepoint = {0.01, 0.2};
  cell.increment_ks = {0.03};
  cell.threshold = 0.05;
  rep.per_c.push_back(cell);
  std::ostringstream os;
  write_convergence_csv(os, rep);
  REQUIRE(os.str() ==
          "c,delta,t,ks,threshold,pass\n"
          "0.5,4,0,0.01,0.050000000000000003,true\n"
          "0.5,4,1,0.20000000000000001,0.050000000000000003,false\n"
          "0.5,4,0->1,0.029999999999999999,0.050000000000000003,true\n");
  const auto j = to_json(rep);
  REQUIRE(j.at("per_c").size() == 1);
  REQUIRE(j.at("verdict") == false);
}

TEST_CASE("path and workload CSV", "[io]") {
  const auto p = PathSample::from_values(GridSpec{0.5, 1, 1}, {-1.0, 0.0, 2.0});
  std::ostringstream os;
  write_path_csv(os, p);
  REQUIRE(os.str() == "t,x\n-0.5,-1\n0,0\n0.5,2\n");
  WorkloadPath w;
  w.h = 0.25;
  w.q_values = {1.0, 0.5};
  std::ostringstream ws;
  write_workload_csv(ws, w);
  REQUIRE(ws.str() == "t,q\n0,1\n0.25,0.5\n");
}
