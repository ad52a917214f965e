#pragma once

#include <nlohmann/json.hpp>

#include "rdcn/metrics.hpp"
#include "rdcn/scheduler.hpp"
#include "rdcn/traffic.hpp"

namespace rdcn {

struct Classifier {
  double mice_max = 100.0;
  double elephant_min = 1000.0;
};

enum class FlowClass { Mice, AllToAll, Elephant };

std::string to_string(FlowClass c);

// size <= mice_max -> mice (static spines); size >= elephant_min -> elephant
// (demand-aware spines); otherwise all-to-all (rotor spines). A class hint
// on the event overrides.
FlowClass classify(const FlowEvent& flow, const Classifier& thresholds);

struct SimConfig {
  NetworkSpec network;
  Trace trace;
  Classifier classifier;
  long horizon = 100;
  uint64_t seed = 1;
  bool record_utilization = false;
  // test-only: serve newly appearing edges at full capacity
  bool ignore_reconfig_penalty = false;
};

struct ClassStats {
  long flows = 0;
  long completed = 0;
  double mean_fct = 0.0;
  double median_fct = 0.0;
  double p99_fct = 0.0;
};

struct SimReport {
  double arrived_volume = 0.0;
  double served_volume = 0.0;
  double coverage = 1.0;  // served / arrived; 1.0 for an empty trace
  std::map<std::string, ClassStats> per_class;
  std::vector<long> completions;  // slot per flow, -1 if unfinished
  TaxReport taxes;                // empirical route length + latency tax
  double max_relay_buffer = 0.0;  // peak bytes staged away from src/dst
  std::vector<double> utilization;  // per slot, if recorded

  nlohmann::json to_json(bool include_per_flow = false) const;
};

// Discrete-timeslot fluid simulation: per-slot matchings, arrivals,
// class-based routing and max-min rate allocation (Valiant detours take
// only capacity left over by final-hop traffic). Deterministic given
// (config, seed).
SimReport run(const SimConfig& config);

}  // namespace rdcn
