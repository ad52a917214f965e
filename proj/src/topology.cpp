#include "rdcn/topology.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

namespace rdcn {

Matching::Matching(std::vector<Edge> p) {
  if (auto err = validate(p)) throw std::invalid_argument("Matching: " + *err);
  std::sort(p.begin(), p.end());
  pairs = std::move(p);
}

std::optional<std::string> Matching::validate(const std::vector<Edge>& p) {
  // Unique destinations are deliberately not required: the De Bruijn shift
  // maps double up on destinations yet are first-class spine configurations.
  std::set<NodeId> srcs;
  for (Edge e : p) {
    if (e.src == e.dst) return "self-loop at node " + std::to_string(e.src);
    if (!srcs.insert(e.src).second)
      return "node " + std::to_string(e.src) + " repeated as source";
  }
  return std::nullopt;
}

bool Matching::contains(Edge e) const {
  return std::binary_search(pairs.begin(), pairs.end(), e);
}

namespace {

void add_bidirectional(EdgeList& edges, NodeId a, NodeId b) {
  edges.push_back({a, b});
  edges.push_back({b, a});
}

void finalize(StaticTopology& t) {
  std::sort(t.edges.begin(), t.edges.end());
  t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
}

}  // namespace

StaticTopology fat_tree(int racks, int radix) {
  if (radix < 4 || radix % 2 != 0)
    throw std::invalid_argument("fat_tree: radix must be even and >= 4");
  if (racks != radix * radix / 2)
    throw std::invalid_argument(
        "fat_tree: racks must equal radix^2/2 for a 3-layer Clos");
  int pods = radix;
  int per_pod = radix / 2;        // edge (ToR) and aggregation count per pod
  int cores = per_pod * per_pod;
  StaticTopology t;
  t.kind = "fat-tree";
  t.n = racks + pods * per_pod + cores;
  t.hosts_per_tor = radix / 2;
  t.role.assign(t.n, 0);
  int agg0 = racks;
  int core0 = racks + pods * per_pod;
  for (int v = agg0; v < core0; ++v) t.role[v] = 1;
  for (int v = core0; v < t.n; ++v) t.role[v] = 2;
  for (int p = 0; p < pods; ++p) {
    for (int e = 0; e < per_pod; ++e) {
      int tor = p * per_pod + e;
      for (int a = 0; a < per_pod; ++a)
        add_bidirectional(t.edges, tor, agg0 + p * per_pod + a);
    }
    for (int a = 0; a < per_pod; ++a)
      for (int c = 0; c < per_pod; ++c)
        add_bidirectional(t.edges, agg0 + p * per_pod + a,
                          core0 + a * per_pod + c);
  }
  finalize(t);
  return t;
}

StaticTopology uni_regular_ring(int racks) {
  if (racks < 3) throw std::invalid_argument("uni_regular_ring: racks < 3");
  StaticTopology t;
  t.kind = "uni-regular-ring";
  t.n = racks;
  for (int i = 0; i < racks; ++i) add_bidirectional(t.edges, i, (i + 1) % racks);
  finalize(t);
  return t;
}

StaticTopology complete_topology(int n) {
  if (n < 2) throw std::invalid_argument("complete_topology: n < 2");
  StaticTopology t;
  t.kind = "complete";
  t.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) t.edges.push_back({i, j});
  finalize(t);
  return t;
}

StaticTopology de_bruijn_topology(int n) {
  MatchingSet ms = de_bruijn_matchings(n);
  StaticTopology t;
  t.kind = "de-bruijn";
  t.n = n;
  for (const Matching& m : ms.matchings)
    t.edges.insert(t.edges.end(), m.pairs.begin(), m.pairs.end());
  finalize(t);
  return t;
}

StaticTopology random_regular(int n, int degree, uint64_t seed) {
  if (degree < 1 || degree >= n)
    throw std::invalid_argument("random_regular: need 1 <= degree < n");
  Rng rng(seed);
  StaticTopology t;
  t.kind = "random-regular-expander";
  t.n = n;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // degree random perfect "shifts": sample `degree` permutations without
    // fixed points or pairwise collisions
    std::set<Edge> edges;
    bool ok = true;
    for (int d = 0; d < degree && ok; ++d) {
      std::vector<NodeId> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      bool good = false;
      for (int tries = 0; tries < 200; ++tries) {
        rng.shuffle(perm);
        good = true;
        for (int i = 0; i < n; ++i)
          if (perm[i] == i || edges.count({i, perm[i]})) { good = false; break; }
        if (good) break;
      }
      if (!good) { ok = false; break; }
      for (int i = 0; i < n; ++i) edges.insert({i, perm[i]});
    }
    if (!ok) continue;
    t.edges.assign(edges.begin(), edges.end());
    if (diameter(t) >= 0) return t;  // strongly connected
    t.edges.clear();
  }
  throw std::runtime_error("random_regular: no connected instance found");
}

MatchingSet de_bruijn_matchings(int n) {
  if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
    throw std::invalid_argument("de_bruijn_matchings: n must be a power of 2");
  std::vector<Edge> m0, m1;
  for (int i = 0; i < n; ++i) {
    int a = (2 * i) % n;
    int b = (2 * i + 1) % n;
    if (a != i) m0.push_back({i, a});
    if (b != i) m1.push_back({i, b});
  }
  MatchingSet ms;
  ms.matchings.push_back(Matching(m0));
  ms.matchings.push_back(Matching(m1));
  return ms;
}

MatchingSet round_robin_matchings(int n) {
  if (n < 2) throw std::invalid_argument("round_robin_matchings: n < 2");
  // circle method; for odd n a virtual bye node n pairs one idle node/round
  int m = n % 2 == 0 ? n : n + 1;
  int rounds = m - 1;
  std::vector<int> circle(m - 1);
  for (int i = 0; i < m - 1; ++i) circle[i] = i + 1;
  MatchingSet ms;
  for (int r = 0; r < rounds; ++r) {
    std::vector<Edge> pairs;
    auto pair_up = [&](int a, int b) {
      if (a >= n || b >= n) return;  // bye
      pairs.push_back({a, b});
      pairs.push_back({b, a});
    };
    pair_up(0, circle[(m - 2 + r) % (m - 1)]);
    for (int i = 1; i < m / 2; ++i)
      pair_up(circle[(r + i - 1) % (m - 1)],
              circle[(m - 2 + r - i) % (m - 1)]);
    ms.matchings.push_back(Matching(pairs));
  }
  return ms;
}

int bfs_distance(const StaticTopology& topo, NodeId src, NodeId dst) {
  std::vector<std::vector<NodeId>> adj(topo.n);
  for (Edge e : topo.edges) adj[e.src].push_back(e.dst);
  std::vector<int> dist(topo.n, -1);
  dist[src] = 0;
  std::deque<NodeId> q{src};
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    if (v == dst) return dist[v];
    for (NodeId u : adj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  return dist[dst];
}

int diameter(const StaticTopology& topo) {
  int d = 0;
  for (int s = 0; s < topo.n; ++s)
    for (int t = 0; t < topo.n; ++t)
      if (s != t) {
        int x = bfs_distance(topo, s, t);
        if (x < 0) return -1;
        d = std::max(d, x);
      }
  return d;
}

}  // namespace rdcn
