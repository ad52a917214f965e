// rdcn: experiment driver for the reconfigurable-network simulator library.
//
// Subcommands:
//   simulate   run a fluid flow-level simulation and write a JSON report
//   metrics    compute throughput / worst-case / bisection / tax metrics
//   complexity score traces on the (temporal, spatial) entropy map as CSV
//   topology   dump the timeslot graph at slot t as "src dst capacity" lines
//
// Exit codes: 0 success, 2 configuration/usage error, 3 runtime error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rdcn/config.hpp"
#include "rdcn/engine.hpp"
#include "rdcn/metrics.hpp"

namespace {

using nlohmann::json;

int verbosity() {
  const char* v = std::getenv("RDCN_LOG");
  return v ? std::atoi(v) : 0;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text << "\n";
}

struct Overrides {
  std::optional<uint64_t> seed;
  std::optional<long> horizon;
  std::string out;
};

rdcn::ExperimentConfig load_with_overrides(const std::string& path,
                                           const Overrides& o) {
  rdcn::ExperimentConfig cfg = rdcn::load_config(path);
  if (o.seed) cfg.run.seed = *o.seed;
  if (o.horizon) cfg.run.horizon = *o.horizon;
  if (!o.out.empty()) cfg.run.output = o.out;
  return cfg;
}

// The timeslot graph metrics operate on, plus a demand matrix derived from
// the traffic section (whole-trace average) or the saturated uniform matrix
// when no traffic is configured.
struct MetricsInput {
  rdcn::EvolvingGraph graph;
  rdcn::TimeslotGraph snapshot;
  rdcn::DemandMatrix demand;
  double capacity = 1.0;
  std::optional<rdcn::StaticTopology> topo;
};

MetricsInput metrics_input(const rdcn::ExperimentConfig& cfg,
                           rdcn::TmtNetwork* net_out) {
  MetricsInput in;
  int n = 0;
  if (cfg.topology) {
    rdcn::StaticTopology topo = rdcn::build_topology(*cfg.topology);
    n = topo.n;
    in.capacity = cfg.network ? cfg.network->capacity : 1.0;
    in.graph = rdcn::EvolvingGraph::static_graph(topo.n, topo.edges,
                                                 in.capacity);
    in.snapshot = in.graph.graph_at(0);
    in.topo = std::move(topo);
  } else if (cfg.network) {
    *net_out = rdcn::build_network(*cfg.network, [&cfg](long) {
      // demand-aware spines in the metrics path see the whole-trace average
      rdcn::Trace tr = rdcn::materialize_trace(cfg.traffic);
      long len = std::max<long>(1, static_cast<long>(tr.size()));
      auto mats = rdcn::aggregate(tr, len, cfg.network->n);
      return mats.empty() ? rdcn::DemandMatrix(cfg.network->n) : mats[0];
    });
    in.graph = net_out->evolve();
    n = in.graph.n;
    in.capacity = in.graph.capacity;
    // measure past the t = 0 boundary (and one period in, if periodic) so
    // reconfiguration rules reflect steady state
    in.snapshot = in.graph.graph_at(in.graph.period.value_or(1));
  } else {
    throw rdcn::ConfigError("metrics: need a topology or network section");
  }
  if (cfg.traffic.generator || cfg.traffic.trace_file) {
    rdcn::Trace tr = rdcn::materialize_trace(cfg.traffic);
    long len = std::max<long>(1, static_cast<long>(tr.size()));
    auto mats = rdcn::aggregate(tr, len, n);
    in.demand = mats.empty() ? rdcn::DemandMatrix(n) : mats[0];
  } else {
    in.demand = rdcn::saturate(rdcn::DemandMatrix::uniform(n, 1.0),
                               in.capacity);
  }
  return in;
}

int cmd_simulate(const std::string& path, const Overrides& o) {
  rdcn::ExperimentConfig cfg = load_with_overrides(path, o);
  if (!cfg.network)
    throw rdcn::ConfigError("simulate: config needs a network section");
  rdcn::SimConfig sim;
  sim.network = *cfg.network;
  sim.trace = rdcn::materialize_trace(cfg.traffic);
  sim.classifier = cfg.classifier;
  sim.horizon = cfg.run.horizon;
  sim.seed = cfg.run.seed;
  sim.record_utilization = cfg.run.record_utilization;
  rdcn::SimReport report = rdcn::run(sim);
  write_output(cfg.run.output, report.to_json().dump(2));
  if (verbosity() > 0)
    std::cerr << "simulate: " << sim.trace.size() << " flows, coverage "
              << report.coverage << "\n";
  return 0;
}

int cmd_metrics(const std::string& path, const Overrides& o) {
  rdcn::ExperimentConfig cfg = load_with_overrides(path, o);
  rdcn::TmtNetwork net;
  MetricsInput in = metrics_input(cfg, &net);
  std::vector<std::string> wanted = cfg.metrics;
  if (wanted.empty()) wanted = {"theta", "bisection"};
  json out;
  for (const std::string& m : wanted) {
    if (m == "theta") {
      rdcn::ThroughputResult r =
          cfg.topology ? rdcn::throughput(in.snapshot, in.demand, cfg.run.eps)
                       : rdcn::throughput_over_period(in.graph, in.demand,
                                                      cfg.run.eps);
      out["theta"] = {{"value", r.theta}, {"eps", r.eps}};
      if (r.disconnected)
        out["theta"]["disconnected"] = {r.disconnected->src,
                                        r.disconnected->dst};
    } else if (m == "theta_star") {
      rdcn::WorstCaseResult r = rdcn::worst_case_throughput(
          in.snapshot, in.capacity, cfg.run.samples, cfg.run.eps,
          cfg.run.seed);
      out["theta_star"] = {{"value", r.theta_star},
                           {"full_throughput", r.full_throughput},
                           {"exact", r.exact},
                           {"matrices_evaluated", r.matrices_evaluated}};
    } else if (m == "bisection") {
      double b = rdcn::bisection_bandwidth(in.snapshot);
      out["bisection"] = {{"value", b}};
      if (in.topo && in.topo->hosts_per_tor > 0) {
        int tors = 0;
        for (size_t v = 0; v < in.topo->role.size(); ++v)
          if (in.topo->role[v] == 0) ++tors;
        if (tors == 0) tors = in.topo->n;
        int hosts = tors * in.topo->hosts_per_tor;
        out["bisection"]["full"] =
            rdcn::full_bisection(b, hosts, in.capacity);
      }
    } else if (m == "taxes") {
      rdcn::TaxReport r = rdcn::taxes(in.graph, in.demand,
                                      rdcn::RoutePolicy::Shortest,
                                      cfg.run.horizon, cfg.run.seed);
      out["taxes"] = {{"expected_route_length", r.expected_route_length},
                      {"bandwidth_tax", r.bandwidth_tax},
                      {"latency_tax", r.latency_tax},
                      {"coverage", r.coverage}};
    }
  }
  write_output(cfg.run.output, out.dump(2));
  return 0;
}

struct ComplexityArgs {
  std::vector<std::string> traces;
  std::string gen_kind;
  int n = 0;
  long length = 0;
  uint64_t seed = 1;
  bool corners = false;
  std::string out;
};

int cmd_complexity(const ComplexityArgs& a) {
  std::vector<std::pair<std::string, rdcn::Trace>> inputs;
  for (const std::string& path : a.traces)
    inputs.emplace_back(path, rdcn::read_trace_csv(path));
  if (!a.gen_kind.empty()) {
    if (a.n < 2 || a.length < 1)
      throw rdcn::ConfigError("complexity: generator needs --n and --length");
    inputs.emplace_back(a.gen_kind,
                        rdcn::gen_trace(rdcn::trace_kind_from_string(a.gen_kind),
                                        a.n, a.length, a.seed));
  }
  if (inputs.empty())
    throw rdcn::ConfigError("complexity: no trace file or generator given");
  std::string csv = "name,temporal,spatial\n";
  auto append = [&csv](const std::string& name, rdcn::ComplexityPoint p) {
    csv += name + "," + std::to_string(p.temporal) + "," +
           std::to_string(p.spatial) + "\n";
  };
  for (auto& [name, trace] : inputs) {
    int n = a.n;
    if (n == 0)
      for (const rdcn::FlowEvent& e : trace)
        n = std::max({n, e.src + 1, e.dst + 1});
    if (static_cast<long>(trace.size()) < 10L * n * n)
      throw rdcn::ConfigError("complexity: trace '" + name +
                              "' shorter than 10 n^2 events");
    append(name, rdcn::complexity_map(trace, n));
  }
  if (a.corners) {
    int n = a.n >= 2 ? a.n : 8;
    long len = std::max<long>(a.length, 10L * n * n);
    append("corner-uniform",
           rdcn::complexity_map(
               rdcn::gen_trace(rdcn::TraceKind::Uniform, n, len, a.seed), n));
    append("corner-constant",
           rdcn::complexity_map(
               rdcn::gen_trace(rdcn::TraceKind::ConstantPair, n, len, a.seed),
               n));
  }
  write_output(a.out, csv.substr(0, csv.size() - 1));
  return 0;
}

int cmd_topology(const std::string& path, long t, const Overrides& o) {
  rdcn::ExperimentConfig cfg = load_with_overrides(path, o);
  rdcn::TimeslotGraph g;
  if (cfg.network) {
    rdcn::TmtNetwork net = rdcn::build_network(*cfg.network, [&cfg](long) {
      return rdcn::DemandMatrix(cfg.network->n);
    });
    g = net.evolve().graph_at(t);
  } else if (cfg.topology) {
    rdcn::StaticTopology topo = rdcn::build_topology(*cfg.topology);
    g = rdcn::EvolvingGraph::static_graph(topo.n, topo.edges).graph_at(t);
  } else {
    throw rdcn::ConfigError("topology: need a network or topology section");
  }
  std::string text;
  for (const auto& [e, cap] : g.capacity)
    text += std::to_string(e.src) + " " + std::to_string(e.dst) + " " +
            std::to_string(cap) + "\n";
  write_output(o.out.empty() ? cfg.run.output : o.out,
               text.empty() ? "" : text.substr(0, text.size() - 1));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reconfigurable datacenter network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  long slot = 0;
  Overrides o;
  ComplexityArgs ca;

  auto add_overrides = [&o](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "override run.seed");
    cmd->add_option("--horizon", o.horizon, "override run.horizon");
    cmd->add_option("--out", o.out, "override output path ('-' for stdout)");
  };

  CLI::App* sim = app.add_subcommand("simulate", "run a simulation");
  sim->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  add_overrides(sim);

  CLI::App* met = app.add_subcommand("metrics", "compute network metrics");
  met->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  add_overrides(met);

  CLI::App* cx = app.add_subcommand("complexity", "score traces on the map");
  cx->add_option("--trace", ca.traces, "trace CSV file(s)");
  cx->add_option("--generator", ca.gen_kind,
                 "trace generator kind (uniform|permutation|zipf|ml-ring|"
                 "constant-pair)");
  cx->add_option("--n", ca.n, "node count for generated traces");
  cx->add_option("--length", ca.length, "event count for generated traces");
  cx->add_option("--seed", ca.seed, "generator seed");
  cx->add_flag("--corners", ca.corners, "append uniform/constant corner rows");
  cx->add_option("--out", ca.out, "output CSV path ('-' for stdout)");

  CLI::App* tp = app.add_subcommand("topology", "dump the graph at a slot");
  tp->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  tp->add_option("--t", slot, "timeslot to dump");
  add_overrides(tp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, o);
    if (met->parsed()) return cmd_metrics(config_path, o);
    if (cx->parsed()) return cmd_complexity(ca);
    if (tp->parsed()) return cmd_topology(config_path, slot, o);
  } catch (const rdcn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
