#include "rdcn/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "rdcn/simplex.hpp"

namespace rdcn {

namespace {

struct FlowNet {
  int nodes = 0;
  std::vector<Edge> edges;  // ids in [0, nodes)
  std::vector<double> cap;
  std::vector<std::vector<int>> out;  // edge indices by tail

  void add_edge(int u, int v, double c) {
    out.resize(nodes);
    out[u].push_back(static_cast<int>(edges.size()));
    edges.push_back({u, v});
    cap.push_back(c);
  }
};

struct Commodity {
  int src, dst;
  double demand;
  Edge label;  // original (src, dst) pair for reporting
};

bool reachable(const FlowNet& net, int src, int dst) {
  std::vector<char> seen(net.nodes, 0);
  std::deque<int> q{src};
  seen[src] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (v == dst) return true;
    for (int ei : net.out[v])
      if (!seen[net.edges[ei].dst]) {
        seen[net.edges[ei].dst] = 1;
        q.push_back(net.edges[ei].dst);
      }
  }
  return false;
}

// O(V^2) Dijkstra over edge lengths; returns per-node predecessor edge.
bool dijkstra(const FlowNet& net, const std::vector<double>& len, int src,
              int dst, std::vector<int>& pred_edge, double* dist_out) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(net.nodes, inf);
  std::vector<char> done(net.nodes, 0);
  pred_edge.assign(net.nodes, -1);
  dist[src] = 0.0;
  for (int it = 0; it < net.nodes; ++it) {
    int v = -1;
    double best = inf;
    for (int u = 0; u < net.nodes; ++u)
      if (!done[u] && dist[u] < best) {
        best = dist[u];
        v = u;
      }
    if (v < 0) break;
    done[v] = 1;
    if (v == dst) break;
    for (int ei : net.out[v]) {
      int u = net.edges[ei].dst;
      // strict comparison: multiplicative-weights lengths start around
      // delta ~ m^{-1/eps}, far below any absolute tolerance
      double d = dist[v] + len[ei];
      if (d < dist[u]) {
        dist[u] = d;
        pred_edge[u] = ei;
      }
    }
  }
  if (dist_out) *dist_out = dist[dst];
  return dist[dst] < inf;
}

std::vector<int> path_edges(const std::vector<int>& pred_edge,
                            const FlowNet& net, int src, int dst) {
  std::vector<int> path;
  int v = dst;
  while (v != src) {
    int ei = pred_edge[v];
    path.push_back(ei);
    v = net.edges[ei].src;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Fleischer-style multiplicative-weights maximum concurrent flow.
// Returns a feasible scaled flow; theta >= (1 - eps) * opt.
double gk_concurrent_flow(const FlowNet& net,
                          const std::vector<Commodity>& commodities,
                          double eps, std::vector<double>& edge_flow) {
  const size_t m = net.edges.size();
  const double e_int = eps / 3.0;
  const double delta =
      std::pow(static_cast<double>(m) / (1.0 - e_int), -1.0 / e_int);
  const double gamma = std::log((1.0 + e_int) / delta) / std::log(1.0 + e_int);
  std::vector<double> len(m);
  for (size_t e = 0; e < m; ++e) len[e] = delta / net.cap[e];
  edge_flow.assign(m, 0.0);
  std::vector<int> pred;
  long phases = 0;
  // theta <= sum(cap) / sum(demand) since every routed unit consumes at least
  // one edge-capacity unit, and the phase count is at most ~gamma * theta
  double total_cap = 0.0, total_demand = 0.0;
  for (size_t e = 0; e < m; ++e) total_cap += net.cap[e];
  for (const Commodity& k : commodities) total_demand += k.demand;
  const long phase_cap =
      static_cast<long>(2.0 * gamma * (total_cap / total_demand + 1.0)) + 1000;
  while (true) {
    double d = 0.0;
    for (size_t e = 0; e < m; ++e) d += len[e] * net.cap[e];
    if (d >= 1.0) break;
    if (phases >= phase_cap)
      throw std::runtime_error(
          "throughput: multiplicative-weights phase cap exceeded (D = " +
          std::to_string(d) + ")");
    for (const Commodity& k : commodities) {
      double remaining = k.demand;
      while (remaining > 1e-15) {
        if (!dijkstra(net, len, k.src, k.dst, pred, nullptr))
          throw std::runtime_error("throughput: commodity lost reachability");
        std::vector<int> path = path_edges(pred, net, k.src, k.dst);
        double bottleneck = remaining;
        for (int ei : path) bottleneck = std::min(bottleneck, net.cap[ei]);
        for (int ei : path) {
          edge_flow[ei] += bottleneck;
          len[ei] *= 1.0 + e_int * bottleneck / net.cap[ei];
        }
        remaining -= bottleneck;
      }
    }
    ++phases;
  }
  for (size_t e = 0; e < m; ++e) edge_flow[e] /= gamma;
  return static_cast<double>(phases) / gamma;
}

std::vector<Commodity> commodities_from(const DemandMatrix& T) {
  std::vector<Commodity> out;
  for (int i = 0; i < T.n; ++i)
    for (int j = 0; j < T.n; ++j)
      if (i != j && T.at(i, j) > 0.0)
        out.push_back({i, j, T.at(i, j), Edge{i, j}});
  return out;
}

FlowNet net_from_graph(const TimeslotGraph& g) {
  FlowNet net;
  net.nodes = g.n;
  net.out.resize(g.n);
  for (const auto& [e, c] : g.capacity)
    if (c > 0.0) net.add_edge(e.src, e.dst, c);
  return net;
}

// Exact concurrent flow: restricted path LP + shortest-path pricing.
double exact_concurrent_flow(const FlowNet& net,
                             const std::vector<Commodity>& commodities) {
  const size_t m = net.edges.size();
  const size_t nc = commodities.size();
  for (const Commodity& k : commodities)
    if (!reachable(net, k.src, k.dst)) return 0.0;
  // columns: per commodity path, stored as edge-index lists
  std::vector<std::vector<std::vector<int>>> paths(nc);
  std::vector<double> unit_len(m, 1.0);
  std::vector<int> pred;
  for (size_t k = 0; k < nc; ++k) {
    dijkstra(net, unit_len, commodities[k].src, commodities[k].dst, pred,
             nullptr);
    paths[k].push_back(path_edges(pred, net, commodities[k].src,
                                  commodities[k].dst));
  }
  double theta = 0.0;
  for (int round = 0; round < 1000; ++round) {
    // master LP: maximize theta
    //   theta * d_k - sum_{p in P_k} x_p <= 0      (rows 0..nc-1)
    //   sum_{p containing e} x_p        <= cap_e   (rows nc..nc+m-1)
    size_t cols = 1;
    for (const auto& pk : paths) cols += pk.size();
    std::vector<std::vector<double>> A(nc + m, std::vector<double>(cols, 0.0));
    std::vector<double> b(nc + m, 0.0), obj(cols, 0.0);
    obj[0] = 1.0;
    size_t col = 1;
    for (size_t k = 0; k < nc; ++k) {
      A[k][0] = commodities[k].demand;
      for (const auto& p : paths[k]) {
        A[k][col] = -1.0;
        for (int ei : p) A[nc + ei][col] += 1.0;
        ++col;
      }
    }
    for (size_t e = 0; e < m; ++e) b[nc + e] = net.cap[e];
    SimplexResult res = simplex_maximize(A, b, obj);
    theta = res.value;
    // pricing: for each commodity, shortest path under edge duals
    std::vector<double> z(m);
    for (size_t e = 0; e < m; ++e) z[e] = res.duals[nc + e];
    bool added = false;
    for (size_t k = 0; k < nc; ++k) {
      double dist;
      dijkstra(net, z, commodities[k].src, commodities[k].dst, pred, &dist);
      if (dist < res.duals[k] - 1e-9) {
        std::vector<int> p =
            path_edges(pred, net, commodities[k].src, commodities[k].dst);
        if (std::find(paths[k].begin(), paths[k].end(), p) == paths[k].end()) {
          paths[k].push_back(p);
          added = true;
        }
      }
    }
    if (!added) return theta;
  }
  throw std::runtime_error("exact_throughput: column generation did not close");
}

}  // namespace

ThroughputResult throughput(const TimeslotGraph& g, const DemandMatrix& T,
                            double eps) {
  if (eps <= 0.0 || eps > 0.5)
    throw std::invalid_argument("throughput: eps must be in (0, 0.5]");
  ThroughputResult res;
  res.eps = eps;
  FlowNet net = net_from_graph(g);
  std::vector<Commodity> commodities = commodities_from(T);
  if (commodities.empty()) {
    res.theta = std::numeric_limits<double>::infinity();
    return res;
  }
  for (const Commodity& k : commodities)
    if (!reachable(net, k.src, k.dst)) {
      res.theta = 0.0;
      res.disconnected = k.label;
      return res;
    }
  std::vector<double> edge_flow;
  res.theta = gk_concurrent_flow(net, commodities, eps, edge_flow);
  for (size_t e = 0; e < net.edges.size(); ++e)
    res.utilization[net.edges[e]] += edge_flow[e];
  return res;
}

double exact_throughput(const TimeslotGraph& g, const DemandMatrix& T) {
  FlowNet net = net_from_graph(g);
  std::vector<Commodity> commodities = commodities_from(T);
  if (commodities.empty()) return std::numeric_limits<double>::infinity();
  return exact_concurrent_flow(net, commodities);
}

ThroughputResult throughput_over_period(const EvolvingGraph& g,
                                        const DemandMatrix& T, double eps) {
  if (!g.period)
    throw std::invalid_argument(
        "throughput_over_period: graph must be periodic");
  long gamma = *g.period;
  int n = g.n;
  // node (v, t) -> t*n + v; super sources/sinks appended
  FlowNet net;
  net.nodes = static_cast<int>(gamma) * n + 2 * n;
  net.out.resize(net.nodes);
  double big = T.total() * gamma + 1.0;
  for (long t = 0; t < gamma; ++t) {
    TimeslotGraph gt = g.graph_at(t);
    long tn = ((t + 1) % gamma) * n;
    for (const auto& [e, c] : gt.capacity)
      if (c > 0.0)
        net.add_edge(static_cast<int>(t * n + e.src),
                     static_cast<int>(tn + e.dst), c);
    for (int v = 0; v < n; ++v)  // relay buffering between slots
      net.add_edge(static_cast<int>(t * n + v), static_cast<int>(tn + v), big);
  }
  int src0 = static_cast<int>(gamma) * n;
  int dst0 = src0 + n;
  std::vector<Commodity> commodities;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && T.at(i, j) > 0.0)
        commodities.push_back({src0 + i, dst0 + j, T.at(i, j) * gamma,
                               Edge{i, j}});
  for (int v = 0; v < n; ++v) {
    for (long t = 0; t < gamma; ++t) {
      net.add_edge(src0 + v, static_cast<int>(t * n + v), big);
      net.add_edge(static_cast<int>(t * n + v), dst0 + v, big);
    }
  }
  ThroughputResult res;
  res.eps = eps;
  if (commodities.empty()) {
    res.theta = std::numeric_limits<double>::infinity();
    return res;
  }
  for (const Commodity& k : commodities)
    if (!reachable(net, k.src, k.dst)) {
      res.theta = 0.0;
      res.disconnected = k.label;
      return res;
    }
  std::vector<double> edge_flow;
  res.theta = gk_concurrent_flow(net, commodities, eps, edge_flow);
  for (size_t e = 0; e < net.edges.size(); ++e) {
    Edge ge = net.edges[e];
    if (ge.src >= src0 || ge.dst >= src0) continue;
    int u = ge.src % n, v = ge.dst % n;
    if (u != v) res.utilization[{u, v}] += edge_flow[e];
  }
  return res;
}

WorstCaseResult worst_case_throughput(const TimeslotGraph& g, double rate,
                                      long samples, double eps,
                                      uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("worst_case_throughput: samples < 1");
  int n = g.n;
  WorstCaseResult res;
  res.theta_star = std::numeric_limits<double>::infinity();
  res.exact = n <= 7;
  auto consider = [&](const DemandMatrix& T) {
    if (T.total() <= 0.0) return;
    double th = res.exact ? exact_throughput(g, T)
                          : throughput(g, T, eps).theta;
    res.theta_star = std::min(res.theta_star, th);
    ++res.matrices_evaluated;
  };
  if (res.exact) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      consider(DemandMatrix::permutation(perm, rate));
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    Rng rng(seed);
    std::vector<NodeId> perm(n);
    for (long s = 0; s < samples; ++s) {
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      consider(DemandMatrix::permutation(perm, rate));
    }
  }
  consider(DemandMatrix::uniform(n, rate));
  res.full_throughput = res.theta_star >= 1.0 - (res.exact ? 1e-9 : eps);
  return res;
}

double bisection_bandwidth(const TimeslotGraph& g) {
  int n = g.n;
  if (n % 2 != 0 || n > 20)
    throw std::invalid_argument(
        "bisection_bandwidth: exact enumeration needs even n <= 20");
  double best = std::numeric_limits<double>::infinity();
  uint32_t full = 1u << n;
  int half = n / 2;
  for (uint32_t mask = 1; mask < full; ++mask) {
    if (!(mask & 1u)) continue;  // fix node 0 on side A, halves counted once
    if (std::popcount(mask) != half) continue;
    double cut = 0.0;
    for (const auto& [e, c] : g.capacity) {
      bool a = mask & (1u << e.src), b = mask & (1u << e.dst);
      if (a != b) cut += c;
    }
    best = std::min(best, cut);
  }
  return best;
}

double bisection_bandwidth(const StaticTopology& topo, double c) {
  TimeslotGraph g;
  g.n = topo.n;
  for (Edge e : topo.edges) {
    g.capacity[e] = c;
    g.multiplicity[e] = 1;
  }
  return bisection_bandwidth(g);
}

bool full_bisection(double bisection, int hosts, double host_link_capacity) {
  // crossing capacity is summed in both directions, so "half the total host
  // traffic" compares against hosts * capacity rather than half of it
  return bisection + 1e-9 >= hosts * host_link_capacity;
}

TaxReport taxes(const EvolvingGraph& g, const DemandMatrix& T,
                RoutePolicy policy, long horizon, uint64_t seed) {
  if (g.period && horizon < *g.period)
    throw std::invalid_argument("taxes: horizon shorter than one period");
  long start = g.period ? *g.period : 0;
  std::set<Edge> ever;
  if (policy == RoutePolicy::Valiant)
    ever = pairs_ever_connected(g, g.period ? *g.period : horizon);
  Rng rng(seed);
  double served_w = 0.0, total_w = 0.0, hop_w = 0.0;
  for (long t = start; t < start + horizon; ++t) {
    TimeslotGraph gt = g.graph_at(t);
    for (int i = 0; i < T.n; ++i)
      for (int j = 0; j < T.n; ++j) {
        double w = i == j ? 0.0 : T.at(i, j);
        if (w <= 0.0) continue;
        total_w += w;
        std::optional<Route> r;
        switch (policy) {
          case RoutePolicy::Shortest:
            r = shortest_path(gt, i, j);
            break;
          case RoutePolicy::Valiant:
            r = valiant_route(gt, ever, i, j, rng);
            break;
          case RoutePolicy::Direct:
            if (gt.cap({i, j}) > 0.0) {
              r = Route{};
              r->hops = {i, j};
              r->slot = t;
            }
            break;
        }
        if (r) {
          served_w += w;
          hop_w += w * r->length();
        }
      }
  }
  TaxReport rep;
  rep.coverage = total_w == 0.0 ? 1.0 : served_w / total_w;
  rep.expected_route_length = served_w == 0.0 ? 1.0 : hop_w / served_w;
  rep.bandwidth_tax = rep.expected_route_length - 1.0;
  rep.latency_tax = lost_capacity_fraction(g, start, horizon);
  return rep;
}

}  // namespace rdcn
