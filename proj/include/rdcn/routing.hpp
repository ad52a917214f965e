#pragma once

#include <optional>
#include <set>

#include "rdcn/evolving_graph.hpp"
#include "rdcn/topology.hpp"

namespace rdcn {

struct Route {
  std::vector<NodeId> hops;  // src ... dst
  long slot = 0;
  // Valiant two-phase: only the first hop is usable this slot; the rest is
  // staged at the relay until its circuit appears.
  bool staged = false;

  int length() const { return static_cast<int>(hops.size()) - 1; }
};

// Minimum-hop path over positive-capacity edges; ties broken by the
// lexicographically smallest node sequence. nullopt when unreachable.
std::optional<Route> shortest_path(const TimeslotGraph& g, NodeId src,
                                   NodeId dst);

// Shift-register routing on node labels: repeatedly shift in the next bit of
// dst, after skipping the longest suffix(src)/prefix(dst) overlap. Length
// <= log2 n. n must be a power of two.
Route debruijn_greedy(int n, NodeId src, NodeId dst);

// One-hop direct circuit if live this slot, otherwise a uniformly random
// relay w with a live src->w circuit and (w,dst) present somewhere in the
// cycle (`ever` = pairs ever connected by the schedule). nullopt when no
// live outgoing circuit helps this slot.
std::optional<Route> valiant_route(const TimeslotGraph& g,
                                   const std::set<Edge>& ever, NodeId src,
                                   NodeId dst, Rng& rng);

// Pairs appearing (with any capacity) in slots [0, horizon) of g.
std::set<Edge> pairs_ever_connected(const EvolvingGraph& g, long horizon);

}  // namespace rdcn
