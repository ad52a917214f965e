#pragma once

#include <optional>
#include <string>

#include "rdcn/core.hpp"

namespace rdcn {

// A partial permutation of n ports: each node appears at most once as a
// source and at most once as a destination, no self-loops.
struct Matching {
  std::vector<Edge> pairs;  // kept sorted by (src, dst)

  Matching() = default;
  explicit Matching(std::vector<Edge> p);

  static std::optional<std::string> validate(const std::vector<Edge>& p);
  bool contains(Edge e) const;
};

struct MatchingSet {
  std::vector<Matching> matchings;
  size_t size() const { return matchings.size(); }
};

struct StaticTopology {
  int n = 0;
  EdgeList edges;  // directed, sorted, unique
  std::string kind;
  std::vector<int> role;  // fat-tree: 0 = ToR, 1 = aggregation, 2 = core
  int hosts_per_tor = 0;
};

// Three-layer non-blocking Clos at switch granularity. Requires
// racks == radix^2 / 2 and an even radix >= 4; racks are the edge (ToR)
// switches, each hosting radix/2 hosts.
StaticTopology fat_tree(int racks, int radix);

// Bidirectional ring; every ToR uses two network ports.
StaticTopology uni_regular_ring(int racks);

StaticTopology complete_topology(int n);

// Union of the De Bruijn shift matchings (self-loops dropped).
StaticTopology de_bruijn_topology(int n);

// Seeded random r-regular digraph (each node r out / r in), pairing model
// with resampling on self-loops/duplicates.
StaticTopology random_regular(int n, int degree, uint64_t seed);

// M0: i -> 2i mod n, M1: i -> 2i+1 mod n; self-loops dropped.
MatchingSet de_bruijn_matchings(int n);

// Round-robin tournament (circle method). Even n: n-1 perfect matchings,
// each unordered pair appearing exactly once; odd n: n matchings with one
// idle node each. Pairs are emitted in both directions.
MatchingSet round_robin_matchings(int n);

// BFS hop diameter; -1 if not strongly connected.
int diameter(const StaticTopology& topo);
int bfs_distance(const StaticTopology& topo, NodeId src, NodeId dst);

}  // namespace rdcn
