#include "rdcn/routing.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace rdcn {

std::optional<Route> shortest_path(const TimeslotGraph& g, NodeId src,
                                   NodeId dst) {
  if (src == dst) throw std::invalid_argument("shortest_path: src == dst");
  // reverse BFS from dst, then greedy descent picking the smallest neighbor
  std::vector<std::vector<NodeId>> radj(g.n), adj(g.n);
  for (const auto& [e, c] : g.capacity)
    if (c > 0.0) {
      radj[e.dst].push_back(e.src);
      adj[e.src].push_back(e.dst);
    }
  std::vector<int> dist(g.n, -1);
  dist[dst] = 0;
  std::deque<NodeId> q{dst};
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    for (NodeId u : radj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  if (dist[src] < 0) return std::nullopt;
  Route r;
  r.slot = g.t;
  NodeId cur = src;
  r.hops.push_back(cur);
  while (cur != dst) {
    NodeId next = -1;
    std::sort(adj[cur].begin(), adj[cur].end());
    for (NodeId u : adj[cur])
      if (dist[u] == dist[cur] - 1) {
        next = u;
        break;
      }
    cur = next;
    r.hops.push_back(cur);
  }
  return r;
}

Route debruijn_greedy(int n, NodeId src, NodeId dst) {
  if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
    throw std::invalid_argument("debruijn_greedy: n must be a power of 2");
  if (src == dst) throw std::invalid_argument("debruijn_greedy: src == dst");
  int bits = std::countr_zero(static_cast<unsigned>(n));
  // longest L with the last L bits of src equal to the first L bits of dst
  int overlap = 0;
  for (int len = bits - 1; len >= 1; --len) {
    int suffix = src & ((1 << len) - 1);
    int prefix = dst >> (bits - len);
    if (suffix == prefix) {
      overlap = len;
      break;
    }
  }
  Route r;
  r.hops.push_back(src);
  int cur = src;
  for (int k = bits - overlap - 1; k >= 0; --k) {
    int bit = (dst >> k) & 1;
    cur = ((cur << 1) | bit) & (n - 1);
    r.hops.push_back(cur);
  }
  return r;
}

std::optional<Route> valiant_route(const TimeslotGraph& g,
                                   const std::set<Edge>& ever, NodeId src,
                                   NodeId dst, Rng& rng) {
  if (src == dst) throw std::invalid_argument("valiant_route: src == dst");
  if (g.cap({src, dst}) > 0.0) {
    Route r;
    r.slot = g.t;
    r.hops = {src, dst};
    return r;
  }
  std::vector<NodeId> candidates;
  for (NodeId w : g.live_out(src))
    if (w != dst && ever.count({w, dst})) candidates.push_back(w);
  if (candidates.empty()) return std::nullopt;
  NodeId w = candidates[rng.below(candidates.size())];
  Route r;
  r.slot = g.t;
  r.hops = {src, w, dst};
  r.staged = true;
  return r;
}

std::set<Edge> pairs_ever_connected(const EvolvingGraph& g, long horizon) {
  std::set<Edge> ever;
  for (long t = 0; t < horizon; ++t)
    for (const auto& layer : g.layers(t))
      ever.insert(layer.begin(), layer.end());
  return ever;
}

}  // namespace rdcn
