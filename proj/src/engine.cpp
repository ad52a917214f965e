#include "rdcn/engine.hpp"

#include <algorithm>
#include <cmath>

namespace rdcn {

std::string to_string(FlowClass c) {
  switch (c) {
    case FlowClass::Mice: return "mice";
    case FlowClass::AllToAll: return "all-to-all";
    case FlowClass::Elephant: return "elephant";
  }
  return "?";
}

FlowClass classify(const FlowEvent& flow, const Classifier& t) {
  if (t.mice_max > t.elephant_min)
    throw std::invalid_argument("classify: mice_max > elephant_min");
  if (flow.class_hint) {
    switch (*flow.class_hint) {
      case FlowClassHint::Mice: return FlowClass::Mice;
      case FlowClassHint::Elephant: return FlowClass::Elephant;
      case FlowClassHint::AllToAll: return FlowClass::AllToAll;
    }
  }
  if (flow.size <= t.mice_max) return FlowClass::Mice;
  if (flow.size >= t.elephant_min) return FlowClass::Elephant;
  return FlowClass::AllToAll;
}

namespace {

constexpr double kByteEps = 1e-9;

struct LiveFlow {
  FlowEvent ev;
  FlowClass cls = FlowClass::AllToAll;
  size_t id = 0;
  std::map<NodeId, double> at;  // bytes by current node (excluding dst)
  double delivered = 0.0;
  long completion = -1;
};

struct ChunkRequest {
  size_t flow = 0;
  NodeId node = 0;
  std::vector<Edge> edges;
  NodeId target = 0;  // where the bytes land (dst or relay)
  int hops = 0;       // edges traversed this slot
  bool detour = false;
  double limit = 0.0;  // bytes available
  double rate = 0.0;
};

// Water-filling max-min within one tier against residual edge capacities.
void progressive_fill(std::vector<ChunkRequest*>& chunks,
                      std::map<Edge, double>& residual) {
  std::vector<ChunkRequest*> open;
  for (ChunkRequest* c : chunks)
    if (!c->edges.empty() && c->limit > kByteEps) open.push_back(c);
  while (!open.empty()) {
    std::map<Edge, double> users;
    for (ChunkRequest* c : open)
      for (Edge e : c->edges) users[e] += 1.0;
    double inc = std::numeric_limits<double>::infinity();
    for (const auto& [e, cnt] : users)
      inc = std::min(inc, std::max(residual.at(e), 0.0) / cnt);
    for (ChunkRequest* c : open) inc = std::min(inc, c->limit - c->rate);
    if (inc > 0.0) {
      for (ChunkRequest* c : open) {
        c->rate += inc;
        for (Edge e : c->edges) residual.at(e) -= inc;
      }
    }
    // freeze saturated chunks and chunks on exhausted edges
    std::vector<ChunkRequest*> still;
    for (ChunkRequest* c : open) {
      bool done = c->rate >= c->limit - kByteEps;
      for (Edge e : c->edges)
        if (residual.at(e) <= kByteEps) done = true;
      if (!done) still.push_back(c);
    }
    if (still.size() == open.size()) break;  // numerical guard
    open.swap(still);
  }
}

struct SubGraphs {
  EvolvingGraph full;
  std::optional<EvolvingGraph> stat, rotor, aware;
  std::set<Edge> ever_full, ever_rotor;
};

}  // namespace

nlohmann::json SimReport::to_json(bool include_per_flow) const {
  nlohmann::json j;
  j["arrived_volume"] = arrived_volume;
  j["served_volume"] = served_volume;
  j["coverage"] = coverage;
  j["max_relay_buffer"] = max_relay_buffer;
  j["expected_route_length"] = taxes.expected_route_length;
  j["bandwidth_tax"] = taxes.bandwidth_tax;
  j["latency_tax"] = taxes.latency_tax;
  nlohmann::json classes;
  for (const auto& [name, st] : per_class) {
    classes[name] = {{"flows", st.flows},
                     {"completed", st.completed},
                     {"mean_fct", st.mean_fct},
                     {"median_fct", st.median_fct},
                     {"p99_fct", st.p99_fct}};
  }
  j["classes"] = classes;
  if (include_per_flow) j["completions"] = completions;
  if (!utilization.empty()) j["utilization"] = utilization;
  return j;
}

SimReport run(const SimConfig& config) {
  if (config.horizon < 1) throw std::invalid_argument("run: horizon < 1");
  if (config.classifier.mice_max > config.classifier.elephant_min)
    throw std::invalid_argument("run: mice_max > elephant_min");

  // live backlog feeding demand-aware spines
  auto backlog = std::make_shared<DemandMatrix>(config.network.n);
  DemandSource pending = [backlog](long) { return *backlog; };
  TmtNetwork net = build_network(config.network, pending);

  SubGraphs g;
  g.full = net.evolve();
  if (net.count(SpineKind::Static) > 0)
    g.stat = net.sub_network(SpineKind::Static);
  if (net.count(SpineKind::Rotor) > 0)
    g.rotor = net.sub_network(SpineKind::Rotor);
  if (net.count(SpineKind::Aware) > 0)
    g.aware = net.sub_network(SpineKind::Aware);
  long probe = g.full.period ? *g.full.period
                             : std::min<long>(config.horizon, 256);
  if (g.rotor) g.ever_rotor = pairs_ever_connected(*g.rotor, probe);
  // Valiant's relay test only consults the demand-oblivious spines: the
  // demand-aware schedule is not known ahead of time (and probing it here
  // would freeze its per-epoch cache against an empty backlog).
  TmtNetwork oblivious;
  oblivious.n = net.n;
  oblivious.capacity = net.capacity;
  for (const auto& s : net.spines)
    if (s->kind() != SpineKind::Aware) oblivious.spines.push_back(s);
  if (!oblivious.spines.empty())
    g.ever_full = pairs_ever_connected(oblivious.evolve(), probe);

  Trace trace = config.trace;
  std::stable_sort(trace.begin(), trace.end(),
                   [](const FlowEvent& a, const FlowEvent& b) {
                     return a.arrival < b.arrival;
                   });

  std::vector<LiveFlow> flows;
  flows.reserve(trace.size());
  size_t next_arrival = 0;

  SimReport report;
  double hop_bytes = 0.0;

  for (long t = 0; t < config.horizon; ++t) {
    // (1) matchings + reconfiguration capacities
    TimeslotGraph full = g.full.graph_at(t);
    if (config.ignore_reconfig_penalty)
      for (auto& [e, c] : full.capacity)
        c = full.multiplicity.at(e) * g.full.capacity;
    TimeslotGraph stat_g, rotor_g, aware_g;
    if (g.stat) stat_g = g.stat->graph_at(t);
    if (g.rotor) rotor_g = g.rotor->graph_at(t);
    if (g.aware) aware_g = g.aware->graph_at(t);
    if (config.ignore_reconfig_penalty) {
      for (TimeslotGraph* sg : {&stat_g, &rotor_g, &aware_g})
        for (auto& [e, c] : sg->capacity)
          c = sg->multiplicity.at(e) * g.full.capacity;
    }

    // (2) arrivals
    while (next_arrival < trace.size() &&
           trace[next_arrival].arrival == t) {
      const FlowEvent& ev = trace[next_arrival];
      if (ev.src < 0 || ev.src >= net.n || ev.dst < 0 || ev.dst >= net.n ||
          ev.src == ev.dst || ev.size <= 0.0)
        throw std::invalid_argument("run: invalid flow event in trace");
      LiveFlow f;
      f.ev = ev;
      f.cls = classify(ev, config.classifier);
      f.id = flows.size();
      f.at[ev.src] = ev.size;
      flows.push_back(std::move(f));
      report.arrived_volume += ev.size;
      backlog->at(ev.src, ev.dst) += ev.size;
      ++next_arrival;
    }

    // (3) routes per chunk
    std::vector<ChunkRequest> chunks;
    for (LiveFlow& f : flows) {
      if (f.completion >= 0) continue;
      for (const auto& [node, bytes] : f.at) {
        if (bytes <= kByteEps) continue;
        ChunkRequest c;
        c.flow = f.id;
        c.node = node;
        c.limit = bytes;
        NodeId dst = f.ev.dst;
        bool relay_chunk = node != f.ev.src;
        auto direct_on = [&](const TimeslotGraph& gr) {
          if (gr.cap({node, dst}) > 0.0) {
            c.edges = {{node, dst}};
            c.target = dst;
            c.hops = 1;
          }
        };
        auto valiant_on = [&](const TimeslotGraph& gr,
                              const std::set<Edge>& ever) {
          if (relay_chunk) {  // second phase: wait for the direct circuit
            direct_on(gr);
            return;
          }
          Rng rng(config.seed ^ (0x5851f42d4c957f2dULL * (f.id + 1) +
                                 static_cast<uint64_t>(t)));
          if (auto r = valiant_route(gr, ever, node, dst, rng)) {
            if (r->staged) {
              c.edges = {{r->hops[0], r->hops[1]}};
              c.target = r->hops[1];
              c.hops = 1;
              c.detour = true;
            } else {
              direct_on(gr);
            }
          }
        };
        auto shortest_on = [&](const TimeslotGraph& gr) {
          if (auto r = shortest_path(gr, node, dst)) {
            for (size_t h = 0; h + 1 < r->hops.size(); ++h)
              c.edges.push_back({r->hops[h], r->hops[h + 1]});
            c.target = dst;
            c.hops = r->length();
          }
        };
        switch (f.cls) {
          case FlowClass::Mice:
            if (g.stat)
              shortest_on(stat_g);
            else
              shortest_on(full);
            break;
          case FlowClass::AllToAll:
            if (g.rotor)
              valiant_on(rotor_g, g.ever_rotor);
            else
              valiant_on(full, g.ever_full);
            break;
          case FlowClass::Elephant:
            if (g.aware)
              direct_on(aware_g);
            else
              valiant_on(full, g.ever_full);
            break;
        }
        if (!c.edges.empty()) chunks.push_back(std::move(c));
      }
    }

    // (4) two-tier max-min allocation over the union capacities
    std::map<Edge, double> residual = full.capacity;
    std::vector<ChunkRequest*> tier1, tier2;
    for (ChunkRequest& c : chunks)
      (c.detour ? tier2 : tier1).push_back(&c);
    progressive_fill(tier1, residual);
    progressive_fill(tier2, residual);

    // (5) transfers, completions
    for (const ChunkRequest& c : chunks) {
      if (c.rate <= kByteEps) continue;
      LiveFlow& f = flows[c.flow];
      f.at[c.node] -= c.rate;
      if (f.at[c.node] <= kByteEps) f.at.erase(c.node);
      hop_bytes += c.rate * c.hops;
      if (c.target == f.ev.dst) {
        f.delivered += c.rate;
        report.served_volume += c.rate;
        backlog->at(f.ev.src, f.ev.dst) =
            std::max(0.0, backlog->at(f.ev.src, f.ev.dst) - c.rate);
        if (f.delivered >= f.ev.size - kByteEps && f.completion < 0)
          f.completion = t;
      } else {
        f.at[c.target] += c.rate;
      }
    }

    double relay_bytes = 0.0;
    for (const LiveFlow& f : flows)
      for (const auto& [node, bytes] : f.at)
        if (node != f.ev.src) relay_bytes += bytes;
    report.max_relay_buffer = std::max(report.max_relay_buffer, relay_bytes);

    if (config.record_utilization) {
      double cap_sum = 0.0, used_sum = 0.0;
      for (const auto& [e, c] : full.capacity) cap_sum += c;
      for (const auto& [e, c] : full.capacity)
        used_sum += c - residual.at(e);
      report.utilization.push_back(cap_sum == 0.0 ? 0.0 : used_sum / cap_sum);
    }
  }

  // aggregates
  report.coverage = report.arrived_volume == 0.0
                        ? 1.0
                        : report.served_volume / report.arrived_volume;
  report.completions.assign(flows.size(), -1);
  std::map<std::string, std::vector<double>> fcts;
  for (const LiveFlow& f : flows) {
    report.completions[f.id] = f.completion;
    ClassStats& st = report.per_class[to_string(f.cls)];
    st.flows += 1;
    if (f.completion >= 0) {
      st.completed += 1;
      fcts[to_string(f.cls)].push_back(
          static_cast<double>(f.completion - f.ev.arrival + 1));
    }
  }
  for (auto& [name, v] : fcts) {
    std::sort(v.begin(), v.end());
    ClassStats& st = report.per_class[name];
    double sum = 0.0;
    for (double x : v) sum += x;
    st.mean_fct = sum / v.size();
    st.median_fct = v[v.size() / 2];
    st.p99_fct = v[std::min(v.size() - 1,
                            static_cast<size_t>(std::ceil(0.99 * v.size())) -
                                1)];
  }
  report.taxes.latency_tax = lost_capacity_fraction(g.full, 0, config.horizon);
  report.taxes.expected_route_length =
      report.served_volume > 0.0 ? hop_bytes / report.served_volume : 1.0;
  report.taxes.bandwidth_tax = report.taxes.expected_route_length - 1.0;
  report.taxes.coverage = report.coverage;
  return report;
}

}  // namespace rdcn
