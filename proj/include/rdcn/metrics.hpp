#pragma once

#include <map>
#include <optional>

#include "rdcn/evolving_graph.hpp"
#include "rdcn/routing.hpp"
#include "rdcn/topology.hpp"
#include "rdcn/traffic.hpp"

namespace rdcn {

struct ThroughputResult {
  double theta = 0.0;
  double eps = 0.0;
  std::map<Edge, double> utilization;  // feasible witness flow per edge
  // set when theta is 0 because this commodity has no path
  std::optional<Edge> disconnected;
};

// Maximum concurrent flow scaling factor, multiplicative-weights
// path-packing approximation: theta in [(1-eps) * theta_opt, theta_opt].
ThroughputResult throughput(const TimeslotGraph& g, const DemandMatrix& T,
                            double eps);

// Exact concurrent-flow value by a path LP solved with column generation.
// Intended for small instances (n <= 7 or so).
double exact_throughput(const TimeslotGraph& g, const DemandMatrix& T);

// Evolving-graph throughput over one period: time-expanded graph with
// per-slot effective capacities, demand interpreted per period.
ThroughputResult throughput_over_period(const EvolvingGraph& g,
                                        const DemandMatrix& T, double eps);

struct WorstCaseResult {
  double theta_star = 0.0;
  bool full_throughput = false;  // theta_star >= 1
  bool exact = false;            // exhaustive over all n! permutations
  long matrices_evaluated = 0;
};

// Minimum throughput over saturated permutation matrices (plus the uniform
// matrix). Exhaustive and exact for n <= 7, sampled + approximate beyond.
WorstCaseResult worst_case_throughput(const TimeslotGraph& g, double rate,
                                      long samples, double eps, uint64_t seed);

// Exact minimum over all balanced bipartitions of the summed capacity of
// directed edges crossing in both directions. n even, n <= 20.
double bisection_bandwidth(const TimeslotGraph& g);
double bisection_bandwidth(const StaticTopology& topo, double c);

// bisection >= half the total host traffic
bool full_bisection(double bisection, int hosts, double host_link_capacity);

enum class RoutePolicy { Shortest, Valiant, Direct };

struct TaxReport {
  double expected_route_length = 1.0;
  double bandwidth_tax = 0.0;  // expected_route_length - 1
  double latency_tax = 0.0;    // capacity fraction lost to reconfiguration
  double coverage = 1.0;       // served demand weight fraction
};

// Demand-weighted mean route length under the policy and capacity lost to
// reconfiguration, measured over `horizon` slots. Periodic graphs are
// measured from t = Gamma (one warmup period) so the t = 0 boundary rule
// does not dilute the steady-state tax.
TaxReport taxes(const EvolvingGraph& g, const DemandMatrix& T,
                RoutePolicy policy, long horizon, uint64_t seed = 1);

}  // namespace rdcn
