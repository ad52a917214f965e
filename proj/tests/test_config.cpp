#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rdcn/config.hpp"

using namespace rdcn;
using nlohmann::json;

namespace {

json sample() {
  return json::parse(R"({
    "network": {
      "n": 8,
      "capacity": 2.0,
      "spines": [
        {"kind": "static"},
        {"kind": "rotor", "hold": 5, "phase": 2},
        {"kind": "aware", "epoch": 10}
      ]
    },
    "traffic": {"generator": {"kind": "uniform", "n": 8, "length": 100, "seed": 7}},
    "classifier": {"mice_max": 50.0, "elephant_min": 500.0},
    "metrics": ["theta", "bisection"],
    "run": {"horizon": 200, "seed": 9, "eps": 0.05}
  })");
}

}  // namespace

TEST_CASE("config parsing and emit round trip") {
  ExperimentConfig a = parse_config(sample());
  CHECK(a.network->n == 8);
  CHECK(a.network->capacity == 2.0);
  REQUIRE(a.network->spines.size() == 3);
  CHECK(a.network->spines[1].kind == SpineKind::Rotor);
  CHECK(a.network->spines[1].hold == 5);
  CHECK(a.network->spines[1].phase == 2);
  CHECK(a.traffic.generator->kind == TraceKind::Uniform);
  CHECK(a.classifier.mice_max == 50.0);
  CHECK(a.run.horizon == 200);

  // emit-then-parse is the identity on the parsed form
  json emitted = emit_config(a);
  ExperimentConfig b = parse_config(emitted);
  CHECK(emit_config(b) == emitted);
}

TEST_CASE("unknown keys are rejected at every level") {
  for (const char* path : {"/nope", "/network/nope", "/network/spines/0/nope",
                           "/traffic/nope", "/traffic/generator/nope",
                           "/classifier/nope", "/run/nope"}) {
    json j = sample();
    j[json::json_pointer(path)] = 1;
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
}

TEST_CASE("config validation errors") {
  json j = sample();
  j["run"]["eps"] = 0.9;
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = sample();
  j["classifier"] = {{"mice_max", 100.0}, {"elephant_min", 10.0}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = sample();
  j["metrics"] = {"nonsense"};
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = sample();
  j["traffic"]["trace_file"] = "x.csv";  // exclusive with generator
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = sample();
  j["network"]["spines"] = json::array();
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  CHECK_THROWS_AS(load_config("no_such_config.json"), ConfigError);
}

TEST_CASE("topology section builders") {
  TopologySection t;
  t.kind = "fat-tree";
  t.racks = 8;
  t.radix = 4;
  CHECK(build_topology(t).kind == "fat-tree");

  t = {};
  t.kind = "ring";
  t.n = 8;
  CHECK(build_topology(t).n == 8);

  t = {};
  t.kind = "de-bruijn";
  t.n = 16;
  CHECK(build_topology(t).n == 16);

  t = {};
  t.kind = "random-regular";
  t.n = 10;
  t.degree = 3;
  t.seed = 4;
  CHECK(build_topology(t).edges.size() == 30);

  t = {};
  t.kind = "moebius";
  CHECK_THROWS_AS(build_topology(t), ConfigError);
}

TEST_CASE("trace materialization from generator or file") {
  TrafficSection ts;
  GeneratorSection g;
  g.kind = TraceKind::ConstantPair;
  g.n = 4;
  g.length = 10;
  ts.generator = g;
  CHECK(materialize_trace(ts).size() == 10);

  Trace tr = gen_trace(TraceKind::Uniform, 4, 20, 3);
  write_trace_csv(tr, "cfg_trace_tmp.csv");
  TrafficSection fs;
  fs.trace_file = "cfg_trace_tmp.csv";
  CHECK(materialize_trace(fs).size() == 20);
  std::remove("cfg_trace_tmp.csv");

  CHECK(materialize_trace({}).empty());
}
