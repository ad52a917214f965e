#include <doctest.h>

#include "oracles.hpp"
#include "rdcn/metrics.hpp"
#include "rdcn/scheduler.hpp"
#include "rdcn/simplex.hpp"

using namespace rdcn;

namespace {

TimeslotGraph snapshot(const StaticTopology& t, double c = 1.0) {
  return EvolvingGraph::static_graph(t.n, t.edges, c).graph_at(0);
}

// seeded strongly-something random digraph; may be disconnected on purpose
TimeslotGraph random_graph(int n, uint64_t seed, double edge_prob_thirds = 1.0) {
  Rng rng(seed);
  EdgeList edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng.unit() < edge_prob_thirds / 3.0)
        edges.push_back({i, j});
  return EvolvingGraph::static_graph(n, edges).graph_at(0);
}

DemandMatrix random_saturated(int n, uint64_t seed) {
  Rng rng(seed);
  DemandMatrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) t.at(i, j) = 0.05 + rng.unit();
  return saturate(t, 1.0);
}

}  // namespace

TEST_CASE("simplex solves small known programs") {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> x=4, y=0, value 12
  SimplexResult r = simplex_maximize({{1, 1}, {1, 3}}, {4, 6}, {3, 2});
  REQUIRE(r.optimal);
  CHECK(r.value == doctest::Approx(12.0));
  CHECK(r.x[0] == doctest::Approx(4.0));
  CHECK(r.x[1] == doctest::Approx(0.0));

  // max x + y s.t. x <= 2, y <= 3 -> 5
  SimplexResult q = simplex_maximize({{1, 0}, {0, 1}}, {2, 3}, {1, 1});
  REQUIRE(q.optimal);
  CHECK(q.value == doctest::Approx(5.0));

  // degenerate/cycling-prone instance still terminates
  SimplexResult d = simplex_maximize(
      {{0.5, -5.5, -2.5, 9}, {0.5, -1.5, -0.5, 1}, {1, 0, 0, 0}},
      {0, 0, 1}, {10, -57, -9, -24});
  REQUIRE(d.optimal);
  CHECK(d.value == doctest::Approx(1.0));
}

TEST_CASE("throughput: exact fits and disconnections") {
  Matching m({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  TimeslotGraph g = EvolvingGraph::static_graph(4, m.pairs, 2.0).graph_at(0);
  DemandMatrix same = DemandMatrix::permutation({1, 2, 3, 0}, 2.0);
  ThroughputResult r = throughput(g, same, 0.05);
  CHECK(r.theta >= 0.95);
  CHECK(r.theta <= 1.0 + 1e-9);
  CHECK(exact_throughput(g, same) == doctest::Approx(1.0));

  DemandMatrix wrong(4);
  wrong.at(0, 2) = 1.0;  // pair never connected by the cycle? 0->1->2 exists
  ThroughputResult w = throughput(g, wrong, 0.05);
  CHECK(w.theta > 0.0);  // multi-hop still serves it

  Matching only({{0, 1}, {2, 3}});
  TimeslotGraph h = EvolvingGraph::static_graph(4, only.pairs).graph_at(0);
  DemandMatrix unserved(4);
  unserved.at(0, 2) = 1.0;
  ThroughputResult z = throughput(h, unserved, 0.05);
  CHECK(z.theta == 0.0);
  REQUIRE(z.disconnected.has_value());
  CHECK(*z.disconnected == Edge{0, 2});
}

TEST_CASE("throughput witness respects capacities within (1+eps)") {
  TimeslotGraph g = snapshot(de_bruijn_topology(8));
  DemandMatrix t = saturate(DemandMatrix::uniform(8, 1.0), 1.0);
  double eps = 0.05;
  ThroughputResult r = throughput(g, t, eps);
  for (const auto& [e, load] : r.utilization) {
    CHECK(g.cap(e) > 0.0);
    CHECK(load <= g.cap(e) * (1 + eps) + 1e-9);
  }
}

TEST_CASE("De Bruijn(8) uniform throughput matches the path-LP oracle") {
  StaticTopology db = de_bruijn_topology(8);
  TimeslotGraph g = snapshot(db);
  DemandMatrix t = saturate(DemandMatrix::uniform(8, 1.0), 1.0);
  std::map<Edge, double> caps;
  for (Edge e : db.edges) caps[e] = 1.0;
  double exact = oracle::max_concurrent_flow(8, caps, t);
  REQUIRE(exact > 0.0);
  ThroughputResult r = throughput(g, t, 0.05);
  CHECK(r.theta >= (1 - 0.05) * exact - 1e-9);
  CHECK(r.theta <= exact + 1e-9);
  CHECK(exact_throughput(g, t) == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("approximate and exact throughput track the oracle on random graphs") {
  int checked = 0;
  for (uint64_t seed = 0; checked < 12; ++seed) {
    int n = 3 + static_cast<int>(seed % 3);
    TimeslotGraph g = random_graph(n, seed * 31 + 1, 1.6);
    DemandMatrix t = random_saturated(n, seed * 31 + 2);
    std::map<Edge, double> caps = g.capacity;
    double exact = oracle::max_concurrent_flow(n, caps, t);
    REQUIRE(exact >= 0.0);
    ThroughputResult r = throughput(g, t, 0.05);
    CHECK(r.theta >= (1 - 0.05) * exact - 1e-9);
    CHECK(r.theta <= exact + 1e-9);
    CHECK(exact_throughput(g, t) == doctest::Approx(exact).epsilon(1e-6));
    ++checked;
  }
}

TEST_CASE("throughput monotonicity: adding an edge never hurts") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    int n = 4;
    TimeslotGraph g = random_graph(n, seed, 1.5);
    DemandMatrix t = random_saturated(n, seed + 100);
    double before = exact_throughput(g, t);
    // add one absent edge
    TimeslotGraph g2 = g;
    bool added = false;
    for (int i = 0; i < n && !added; ++i)
      for (int j = 0; j < n && !added; ++j)
        if (i != j && !g2.capacity.count({i, j})) {
          g2.capacity[{i, j}] = 1.0;
          g2.multiplicity[{i, j}] = 1;
          added = true;
        }
    if (!added) continue;
    CHECK(exact_throughput(g2, t) >= before - 1e-7);
  }
}

TEST_CASE("periodic throughput: a rotor serves uniform demand over its cycle") {
  TmtNetwork net;
  net.n = 4;
  net.spines.emplace_back(rotor_schedule(round_robin_matchings(4), 5, 0));
  EvolvingGraph g = net.evolve();
  // duty cycle 4/5; uniform demand per slot at rate 1/3 per pair needs
  // exactly the (m-1)/m capacity the rotor offers on average
  DemandMatrix t = DemandMatrix::uniform(4, 1.0);
  ThroughputResult r = throughput_over_period(g, t, 0.05);
  CHECK(r.theta >= 0.95 * (4.0 / 5.0) - 1e-9);
  CHECK(r.theta <= 4.0 / 5.0 + 1e-9);

  // a static graph viewed as evolving matches the static computation
  StaticTopology db = de_bruijn_topology(8);
  EvolvingGraph sg = EvolvingGraph::static_graph(8, db.edges);
  DemandMatrix u = saturate(DemandMatrix::uniform(8, 1.0), 1.0);
  ThroughputResult a = throughput_over_period(sg, u, 0.05);
  double exact = exact_throughput(sg.graph_at(0), u);
  CHECK(a.theta >= (1 - 0.05) * exact - 1e-9);
  CHECK(a.theta <= exact + 1e-9);
}

TEST_CASE("worst-case throughput: complete graph has full throughput") {
  TimeslotGraph g = snapshot(complete_topology(4));
  WorstCaseResult r = worst_case_throughput(g, 1.0, 10, 0.05, 1);
  CHECK(r.exact);
  CHECK(r.theta_star >= 1.0 - 1e-9);
  CHECK(r.full_throughput);
}

TEST_CASE("worst-case throughput: a single matching fails some permutation") {
  Matching m = round_robin_matchings(4).matchings[0];
  TimeslotGraph g = EvolvingGraph::static_graph(4, m.pairs).graph_at(0);
  WorstCaseResult r = worst_case_throughput(g, 1.0, 10, 0.05, 1);
  CHECK(r.theta_star == 0.0);
  CHECK_FALSE(r.full_throughput);
}

TEST_CASE("worst-case throughput: ring below De Bruijn at n = 8") {
  WorstCaseResult ring =
      worst_case_throughput(snapshot(uni_regular_ring(8)), 1.0, 40, 0.05, 7);
  WorstCaseResult db =
      worst_case_throughput(snapshot(de_bruijn_topology(8)), 1.0, 40, 0.05, 7);
  CHECK(ring.theta_star < db.theta_star);
}

TEST_CASE("bisection bandwidth") {
  CHECK(bisection_bandwidth(snapshot(uni_regular_ring(4))) ==
        doctest::Approx(4.0));
  CHECK(bisection_bandwidth(snapshot(complete_topology(4))) ==
        doctest::Approx(8.0));
  // capacity scaling
  CHECK(bisection_bandwidth(uni_regular_ring(4), 2.5) == doctest::Approx(10.0));

  // disconnected halves cross nothing
  TimeslotGraph disc =
      EvolvingGraph::static_graph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}})
          .graph_at(0);
  CHECK(bisection_bandwidth(disc) == 0.0);

  CHECK_THROWS(bisection_bandwidth(snapshot(uni_regular_ring(5))));
  CHECK_THROWS(bisection_bandwidth(snapshot(uni_regular_ring(22))));

  CHECK(full_bisection(16.0, 16, 1.0));
  CHECK_FALSE(full_bisection(15.0, 16, 1.0));
}

TEST_CASE("taxes: static complete graph is tax free") {
  EvolvingGraph g = EvolvingGraph::static_graph(
      6, complete_topology(6).edges);
  TaxReport r = taxes(g, DemandMatrix::uniform(6, 1.0), RoutePolicy::Shortest,
                      50);
  CHECK(r.expected_route_length == doctest::Approx(1.0));
  CHECK(r.bandwidth_tax == doctest::Approx(0.0));
  CHECK(r.latency_tax == 0.0);
  CHECK(r.coverage == doctest::Approx(1.0));
}

TEST_CASE("taxes: rotor latency tax is exactly 1/m") {
  for (long m : {2L, 5L, 10L}) {
    TmtNetwork net;
    net.n = 6;
    net.spines.emplace_back(rotor_schedule(round_robin_matchings(6), m, 0));
    EvolvingGraph g = net.evolve();
    TaxReport r = taxes(g, DemandMatrix::uniform(6, 1.0),
                        RoutePolicy::Shortest, 2 * *g.period);
    CHECK(r.latency_tax == doctest::Approx(1.0 / m).epsilon(1e-12));
  }
}

TEST_CASE("taxes: 8-ring expected route length is 16/7 under uniform demand") {
  EvolvingGraph g = EvolvingGraph::static_graph(8, uni_regular_ring(8).edges);
  TaxReport r = taxes(g, DemandMatrix::uniform(8, 1.0), RoutePolicy::Shortest,
                      20);
  CHECK(r.expected_route_length == doctest::Approx(16.0 / 7.0));
  CHECK(r.bandwidth_tax == doctest::Approx(16.0 / 7.0 - 1.0));
}

TEST_CASE("taxes: horizon below the period is rejected") {
  TmtNetwork net;
  net.n = 4;
  net.spines.emplace_back(rotor_schedule(round_robin_matchings(4), 5, 0));
  EvolvingGraph g = net.evolve();
  CHECK_THROWS(taxes(g, DemandMatrix::uniform(4, 1.0), RoutePolicy::Shortest,
                     *g.period - 1));
}
