#include "rdcn/evolving_graph.hpp"

#include <algorithm>
#include <set>

namespace rdcn {

std::vector<NodeId> TimeslotGraph::live_out(NodeId v) const {
  std::vector<NodeId> out;
  for (const auto& [e, c] : capacity)
    if (e.src == v && c > 0.0) out.push_back(e.dst);
  return out;
}

std::vector<NodeId> TimeslotGraph::live_in(NodeId v) const {
  std::vector<NodeId> in;
  for (const auto& [e, c] : capacity)
    if (e.dst == v && c > 0.0) in.push_back(e.src);
  return in;
}

TimeslotGraph EvolvingGraph::graph_at(long t) const {
  if (t < 0) throw std::invalid_argument("graph_at: negative timeslot");
  TimeslotGraph g;
  g.t = t;
  g.n = n;
  std::vector<EdgeList> now = layers(t);
  std::vector<EdgeList> prev;
  if (t > 0) prev = layers(t - 1);
  for (size_t l = 0; l < now.size(); ++l) {
    std::set<Edge> before;
    if (t > 0 && l < prev.size()) before.insert(prev[l].begin(), prev[l].end());
    for (Edge e : now[l]) {
      if (e.src == e.dst)
        throw std::runtime_error("graph_at: layer emitted a self-loop");
      g.multiplicity[e] += 1;
      // edges of E_0 count as pre-established
      bool usable = (t == 0) || before.count(e) > 0;
      g.capacity[e] += usable ? capacity : 0.0;
    }
  }
  return g;
}

double EvolvingGraph::effective_capacity(Edge e, long t) const {
  return graph_at(t).cap(e);
}

EvolvingGraph EvolvingGraph::static_graph(int n, EdgeList edges, double c) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  EvolvingGraph g;
  g.n = n;
  g.capacity = c;
  g.period = 1;
  g.layers = [edges](long) { return std::vector<EdgeList>{edges}; };
  return g;
}

std::map<Edge, long> reconfig_slots(const EvolvingGraph& g, long horizon) {
  if (horizon < 1) throw std::invalid_argument("reconfig_slots: horizon < 1");
  std::map<Edge, long> counts;
  for (long t = 0; t < horizon; ++t) {
    TimeslotGraph gt = g.graph_at(t);
    for (const auto& [e, mult] : gt.multiplicity) {
      (void)mult;
      if (gt.cap(e) == 0.0) counts[e] += 1;
    }
  }
  return counts;
}

double lost_capacity_fraction(const EvolvingGraph& g, long start, long horizon) {
  double total = 0.0, lost = 0.0;
  for (long t = start; t < start + horizon; ++t) {
    TimeslotGraph gt = g.graph_at(t);
    for (const auto& [e, mult] : gt.multiplicity) {
      double full = mult * g.capacity;
      total += full;
      lost += full - gt.cap(e);
    }
  }
  return total == 0.0 ? 0.0 : lost / total;
}

bool check_periodicity(const EvolvingGraph& g, long samples, Rng& rng) {
  if (!g.period) return true;
  long gamma = *g.period;
  for (long i = 0; i < samples; ++i) {
    long t = static_cast<long>(rng.below(10000));
    if (g.layers(t) != g.layers(t + gamma)) return false;
  }
  return true;
}

std::optional<std::string> check_degree_bounds(const EvolvingGraph& g,
                                               long slots) {
  for (long t = 0; t < slots; ++t) {
    TimeslotGraph gt = g.graph_at(t);
    std::vector<int> outd(g.n, 0), ind(g.n, 0);
    for (const auto& [e, mult] : gt.multiplicity) {
      outd[e.src] += mult;
      ind[e.dst] += mult;
    }
    for (int v = 0; v < g.n; ++v) {
      if (g.degree_bound &&
          (outd[v] > *g.degree_bound || ind[v] > *g.degree_bound))
        return "degree bound exceeded at slot " + std::to_string(t);
      if (g.regularity && (outd[v] != *g.regularity || ind[v] != *g.regularity))
        return "regularity violated at node " + std::to_string(v) +
               " slot " + std::to_string(t);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_inter_reconfig(const EvolvingGraph& g,
                                                long inter_reconfig,
                                                long horizon) {
  if (inter_reconfig <= 0) return std::nullopt;
  size_t num_layers = g.layers(0).size();
  std::vector<long> last_change(num_layers, -1);
  std::vector<std::set<Edge>> prev(num_layers);
  for (long t = 0; t < horizon; ++t) {
    std::vector<EdgeList> now = g.layers(t);
    for (size_t l = 0; l < num_layers; ++l) {
      bool fresh = false;
      for (Edge e : now[l])
        if (t > 0 && prev[l].count(e) == 0) fresh = true;
      if (fresh) {
        if (last_change[l] >= 0 && t - last_change[l] <= inter_reconfig)
          return "layer " + std::to_string(l) + " reconfigured at slots " +
                 std::to_string(last_change[l]) + " and " + std::to_string(t);
        last_change[l] = t;
      }
      prev[l].clear();
      prev[l].insert(now[l].begin(), now[l].end());
    }
  }
  return std::nullopt;
}

}  // namespace rdcn
