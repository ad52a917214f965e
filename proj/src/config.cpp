#include "rdcn/config.hpp"

#include <fstream>
#include <set>

namespace rdcn {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get_or(const json& j, const std::string& key, T def) {
  if (!j.contains(key)) return def;
  return j.at(key).get<T>();
}

SpineSpec parse_spine(const json& j, size_t idx) {
  std::string where = "network.spines[" + std::to_string(idx) + "]";
  check_keys(j,
             {"kind", "matching", "static_index", "hold", "phase", "epoch",
              "inter_reconfig", "greedy_matching"},
             where);
  SpineSpec s;
  s.kind = spine_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("matching")) {
    std::vector<Edge> pairs;
    for (const auto& p : j.at("matching")) {
      if (!p.is_array() || p.size() != 2)
        throw ConfigError(where + ": matching entries must be [src, dst]");
      pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    s.matching = Matching(pairs);
  }
  s.static_index = get_or(j, "static_index", 0);
  s.hold = get_or<long>(j, "hold", 5);
  if (j.contains("phase")) s.phase = j.at("phase").get<long>();
  s.epoch = get_or<long>(j, "epoch", 10);
  s.inter_reconfig = get_or<long>(j, "inter_reconfig", 0);
  s.greedy_matching = get_or(j, "greedy_matching", false);
  return s;
}

json emit_spine(const SpineSpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  if (s.matching) {
    json m = json::array();
    for (Edge e : s.matching->pairs) m.push_back({e.src, e.dst});
    j["matching"] = m;
  }
  if (s.static_index != 0) j["static_index"] = s.static_index;
  if (s.kind == SpineKind::Rotor) {
    j["hold"] = s.hold;
    if (s.phase) j["phase"] = *s.phase;
  }
  if (s.kind == SpineKind::Aware) {
    j["epoch"] = s.epoch;
    if (s.greedy_matching) j["greedy_matching"] = true;
  }
  if (s.inter_reconfig != 0) j["inter_reconfig"] = s.inter_reconfig;
  return j;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  check_keys(j, {"network", "topology", "traffic", "classifier", "metrics",
                 "run"},
             "config");
  ExperimentConfig c;
  if (j.contains("network")) {
    const json& n = j.at("network");
    check_keys(n, {"n", "capacity", "spines"}, "network");
    NetworkSpec spec;
    spec.n = n.at("n").get<int>();
    spec.capacity = get_or(n, "capacity", 1.0);
    if (!n.contains("spines") || !n.at("spines").is_array() ||
        n.at("spines").empty())
      throw ConfigError("network: at least one spine required");
    size_t idx = 0;
    for (const auto& s : n.at("spines")) spec.spines.push_back(parse_spine(s, idx++));
    c.network = spec;
  }
  if (j.contains("topology")) {
    const json& t = j.at("topology");
    check_keys(t, {"kind", "n", "racks", "radix", "degree", "seed"},
               "topology");
    TopologySection ts;
    ts.kind = t.at("kind").get<std::string>();
    ts.n = get_or(t, "n", 0);
    ts.racks = get_or(t, "racks", 0);
    ts.radix = get_or(t, "radix", 0);
    ts.degree = get_or(t, "degree", 0);
    ts.seed = get_or<uint64_t>(t, "seed", 1);
    c.topology = ts;
  }
  if (j.contains("traffic")) {
    const json& t = j.at("traffic");
    check_keys(t, {"generator", "trace_file"}, "traffic");
    if (t.contains("generator")) {
      const json& g = t.at("generator");
      check_keys(g, {"kind", "n", "length", "seed", "size"},
                 "traffic.generator");
      GeneratorSection gs;
      gs.kind = trace_kind_from_string(g.at("kind").get<std::string>());
      gs.n = g.at("n").get<int>();
      gs.length = g.at("length").get<long>();
      gs.seed = get_or<uint64_t>(g, "seed", 1);
      gs.size = get_or(g, "size", 1.0);
      c.traffic.generator = gs;
    }
    if (t.contains("trace_file"))
      c.traffic.trace_file = t.at("trace_file").get<std::string>();
    if (c.traffic.generator && c.traffic.trace_file)
      throw ConfigError("traffic: generator and trace_file are exclusive");
  }
  if (j.contains("classifier")) {
    const json& cl = j.at("classifier");
    check_keys(cl, {"mice_max", "elephant_min"}, "classifier");
    c.classifier.mice_max = get_or(cl, "mice_max", 100.0);
    c.classifier.elephant_min = get_or(cl, "elephant_min", 1000.0);
    if (c.classifier.mice_max > c.classifier.elephant_min)
      throw ConfigError("classifier: mice_max > elephant_min");
  }
  if (j.contains("metrics")) {
    for (const auto& m : j.at("metrics")) {
      std::string name = m.get<std::string>();
      static const std::set<std::string> known{"theta", "theta_star",
                                               "bisection", "taxes"};
      if (!known.count(name))
        throw ConfigError("metrics: unknown metric '" + name + "'");
      c.metrics.push_back(name);
    }
  }
  if (j.contains("run")) {
    const json& r = j.at("run");
    check_keys(r,
               {"horizon", "seed", "eps", "output", "format",
                "record_utilization", "samples"},
               "run");
    c.run.horizon = get_or<long>(r, "horizon", 100);
    c.run.seed = get_or<uint64_t>(r, "seed", 42);
    c.run.eps = get_or(r, "eps", 0.05);
    c.run.output = get_or<std::string>(r, "output", "");
    c.run.format = get_or<std::string>(r, "format", "json");
    c.run.record_utilization = get_or(r, "record_utilization", false);
    c.run.samples = get_or<long>(r, "samples", 50);
    if (c.run.format != "json" && c.run.format != "csv")
      throw ConfigError("run.format must be json or csv");
    if (c.run.eps <= 0.0 || c.run.eps > 0.5)
      throw ConfigError("run.eps must be in (0, 0.5]");
    if (c.run.horizon < 1) throw ConfigError("run.horizon must be >= 1");
  }
  return c;
}

json emit_config(const ExperimentConfig& c) {
  json j;
  if (c.network) {
    json n;
    n["n"] = c.network->n;
    n["capacity"] = c.network->capacity;
    json spines = json::array();
    for (const SpineSpec& s : c.network->spines) spines.push_back(emit_spine(s));
    n["spines"] = spines;
    j["network"] = n;
  }
  if (c.topology) {
    json t;
    t["kind"] = c.topology->kind;
    if (c.topology->n) t["n"] = c.topology->n;
    if (c.topology->racks) t["racks"] = c.topology->racks;
    if (c.topology->radix) t["radix"] = c.topology->radix;
    if (c.topology->degree) t["degree"] = c.topology->degree;
    t["seed"] = c.topology->seed;
    j["topology"] = t;
  }
  json traffic;
  if (c.traffic.generator) {
    const GeneratorSection& g = *c.traffic.generator;
    traffic["generator"] = {{"kind", to_string(g.kind)},
                            {"n", g.n},
                            {"length", g.length},
                            {"seed", g.seed},
                            {"size", g.size}};
  }
  if (c.traffic.trace_file) traffic["trace_file"] = *c.traffic.trace_file;
  if (!traffic.is_null()) j["traffic"] = traffic;
  j["classifier"] = {{"mice_max", c.classifier.mice_max},
                     {"elephant_min", c.classifier.elephant_min}};
  if (!c.metrics.empty()) j["metrics"] = c.metrics;
  j["run"] = {{"horizon", c.run.horizon},
              {"seed", c.run.seed},
              {"eps", c.run.eps},
              {"output", c.run.output},
              {"format", c.run.format},
              {"record_utilization", c.run.record_utilization},
              {"samples", c.run.samples}};
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

StaticTopology build_topology(const TopologySection& t) {
  if (t.kind == "fat-tree") return fat_tree(t.racks, t.radix);
  if (t.kind == "ring") return uni_regular_ring(t.n ? t.n : t.racks);
  if (t.kind == "de-bruijn") return de_bruijn_topology(t.n);
  if (t.kind == "complete") return complete_topology(t.n);
  if (t.kind == "random-regular")
    return random_regular(t.n, t.degree, t.seed);
  throw ConfigError("unknown topology kind: " + t.kind);
}

Trace materialize_trace(const TrafficSection& t) {
  if (t.trace_file) return read_trace_csv(*t.trace_file);
  if (t.generator) {
    const GeneratorSection& g = *t.generator;
    return gen_trace(g.kind, g.n, g.length, g.seed, g.size);
  }
  return {};
}

}  // namespace rdcn
