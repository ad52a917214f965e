#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "rdcn/core.hpp"

namespace rdcn {

// Snapshot of the topology at one timeslot. Capacities already reflect
// reconfiguration semantics: an edge that was not present in the previous
// slot (in the same layer) contributes 0 this slot.
struct TimeslotGraph {
  long t = 0;
  int n = 0;
  // effective capacity per edge; edges with capacity 0 may still be present
  // (they exist in E_t but are reconfiguring)
  std::map<Edge, double> capacity;
  // number of layers (spines) providing the edge at t
  std::map<Edge, int> multiplicity;

  bool has_edge(Edge e) const { return multiplicity.count(e) > 0; }

  double cap(Edge e) const {
    auto it = capacity.find(e);
    return it == capacity.end() ? 0.0 : it->second;
  }

  // out-neighbors over positive-capacity edges, ascending
  std::vector<NodeId> live_out(NodeId v) const;
  std::vector<NodeId> live_in(NodeId v) const;
};

// Sequence of directed timeslot graphs over a fixed node set. The edge
// sequence is produced lazily by a generator; a graph may consist of several
// layers (one per spine switch) whose capacities add on coincident edges.
// Immutable after construction; all queries are pure.
struct EvolvingGraph {
  int n = 0;
  double slot_seconds = 1.0;  // Delta, metadata only
  double capacity = 1.0;      // uniform per-layer edge capacity c
  std::optional<long> period;
  std::optional<int> degree_bound;
  std::optional<int> regularity;
  // layer edge sets at slot t; each inner list must be self-loop free and
  // duplicate free within the layer
  std::function<std::vector<EdgeList>(long)> layers;

  TimeslotGraph graph_at(long t) const;
  double effective_capacity(Edge e, long t) const;

  // A static (single-layer, time-invariant) graph.
  static EvolvingGraph static_graph(int n, EdgeList edges, double c = 1.0);
};

// Per directed pair: number of slots in [0, horizon) where the edge existed
// with effective capacity 0.
std::map<Edge, long> reconfig_slots(const EvolvingGraph& g, long horizon);

// Fraction of layer-edge-slot capacity lost to reconfiguration over
// [start, start + horizon). 0/0 (no edges at all) reports 0.
double lost_capacity_fraction(const EvolvingGraph& g, long start, long horizon);

// Structural checks, sampled over [0, slots).
bool check_periodicity(const EvolvingGraph& g, long samples, Rng& rng);
std::optional<std::string> check_degree_bounds(const EvolvingGraph& g,
                                               long slots);

// Validates that within each layer, no edge newly appears within
// inter_reconfig slots of that layer's previous edge change.
std::optional<std::string> check_inter_reconfig(const EvolvingGraph& g,
                                                long inter_reconfig,
                                                long horizon);

}  // namespace rdcn
