#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "rdcn/engine.hpp"
#include "rdcn/scheduler.hpp"
#include "rdcn/topology.hpp"
#include "rdcn/traffic.hpp"

namespace rdcn {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratorSection {
  TraceKind kind = TraceKind::Uniform;
  int n = 0;
  long length = 0;
  uint64_t seed = 1;
  double size = 1.0;
};

struct TrafficSection {
  std::optional<GeneratorSection> generator;
  std::optional<std::string> trace_file;
};

struct TopologySection {
  std::string kind;  // fat-tree | ring | de-bruijn | complete | random-regular
  int n = 0;
  int racks = 0, radix = 0, degree = 0;
  uint64_t seed = 1;
};

struct RunSection {
  long horizon = 100;
  uint64_t seed = 42;
  double eps = 0.05;
  std::string output;
  std::string format = "json";  // json | csv
  bool record_utilization = false;
  long samples = 50;
};

struct ExperimentConfig {
  std::optional<NetworkSpec> network;
  std::optional<TopologySection> topology;
  TrafficSection traffic;
  Classifier classifier;
  std::vector<std::string> metrics;  // theta theta_star bisection taxes
  RunSection run;
};

// Strict: unknown keys anywhere are rejected with ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json emit_config(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

StaticTopology build_topology(const TopologySection& t);
Trace materialize_trace(const TrafficSection& t);

}  // namespace rdcn
