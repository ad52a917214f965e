#include "rdcn/scheduler.hpp"

#include <bit>
#include <map>
#include <numeric>

#include "rdcn/assignment.hpp"

namespace rdcn {

std::string to_string(SpineKind k) {
  switch (k) {
    case SpineKind::Static: return "static";
    case SpineKind::Rotor: return "rotor";
    case SpineKind::Aware: return "aware";
  }
  return "?";
}

SpineKind spine_kind_from_string(const std::string& s) {
  if (s == "static") return SpineKind::Static;
  if (s == "rotor") return SpineKind::Rotor;
  if (s == "aware" || s == "demand-aware") return SpineKind::Aware;
  throw std::invalid_argument("unknown spine kind: " + s);
}

namespace {

class StaticScheduler final : public SpineScheduler {
 public:
  explicit StaticScheduler(Matching m) : m_(std::move(m)) {}
  Matching at(long) const override { return m_; }
  SpineKind kind() const override { return SpineKind::Static; }
  long period() const override { return 1; }

 private:
  Matching m_;
};

class RotorScheduler final : public SpineScheduler {
 public:
  RotorScheduler(MatchingSet ms, long hold, long phase)
      : ms_(std::move(ms)), hold_(hold), phase_(phase) {}

  Matching at(long t) const override {
    long idx = ((t + phase_) / hold_) % static_cast<long>(ms_.size());
    return ms_.matchings[idx];
  }
  SpineKind kind() const override { return SpineKind::Rotor; }
  long period() const override { return hold_ * static_cast<long>(ms_.size()); }

 private:
  MatchingSet ms_;
  long hold_;
  long phase_;
};

class AwareScheduler final : public SpineScheduler {
 public:
  AwareScheduler(int n, long epoch, DemandSource pending, bool greedy)
      : n_(n), epoch_(epoch), pending_(std::move(pending)), greedy_(greedy) {}

  Matching at(long t) const override {
    long k = t / epoch_;
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    DemandMatrix w = pending_(k * epoch_);
    if (w.n != n_)
      throw std::runtime_error("demand source returned wrong dimension");
    Matching m = max_weight_matching(w, greedy_);
    cache_.emplace(k, m);
    return m;
  }
  SpineKind kind() const override { return SpineKind::Aware; }
  long period() const override { return 0; }

 private:
  int n_;
  long epoch_;
  DemandSource pending_;
  bool greedy_;
  mutable std::map<long, Matching> cache_;
};

}  // namespace

std::unique_ptr<SpineScheduler> static_schedule(Matching m) {
  return std::make_unique<StaticScheduler>(std::move(m));
}

std::unique_ptr<SpineScheduler> rotor_schedule(MatchingSet ms, long hold,
                                               long phase,
                                               long inter_reconfig) {
  if (ms.size() < 2)
    throw std::invalid_argument("rotor_schedule: need at least two matchings");
  if (hold < 2)
    throw std::invalid_argument(
        "rotor_schedule: hold 1 loses all capacity to reconfiguration");
  if (hold < 1 + inter_reconfig)
    throw std::invalid_argument(
        "rotor_schedule: hold violates inter-reconfiguration time");
  return std::make_unique<RotorScheduler>(std::move(ms), hold, phase);
}

std::unique_ptr<SpineScheduler> demand_aware_schedule(int n, long epoch,
                                                      DemandSource pending,
                                                      long inter_reconfig,
                                                      bool greedy) {
  if (epoch < 1 + inter_reconfig)
    throw std::invalid_argument(
        "demand_aware_schedule: epoch must be >= 1 + inter_reconfig");
  if (!pending)
    throw std::invalid_argument("demand_aware_schedule: no demand source");
  return std::make_unique<AwareScheduler>(n, epoch, std::move(pending), greedy);
}

size_t TmtNetwork::count(SpineKind k) const {
  size_t c = 0;
  for (const auto& s : spines)
    if (s->kind() == k) ++c;
  return c;
}

namespace {

EvolvingGraph compose(int n, double capacity,
                      std::vector<std::shared_ptr<SpineScheduler>> spines) {
  EvolvingGraph g;
  g.n = n;
  g.capacity = capacity;
  g.degree_bound = static_cast<int>(spines.size());
  long gamma = 1;
  bool periodic = !spines.empty();
  for (const auto& s : spines) {
    long p = s->period();
    if (p == 0) {
      periodic = false;
      break;
    }
    gamma = std::lcm(gamma, p);
  }
  if (periodic) g.period = gamma;
  g.layers = [n, spines = std::move(spines)](long t) {
    std::vector<EdgeList> out;
    out.reserve(spines.size());
    for (const auto& s : spines) {
      Matching m = s->at(t);
      if (auto err = Matching::validate(m.pairs))
        throw std::runtime_error("scheduler emitted invalid matching: " + *err);
      for (Edge e : m.pairs)
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
          throw std::runtime_error("scheduler emitted out-of-range port");
      out.push_back(m.pairs);
    }
    return out;
  };
  return g;
}

}  // namespace

EvolvingGraph TmtNetwork::evolve() const {
  if (spines.empty()) throw std::invalid_argument("evolve: no spines");
  return compose(n, capacity, spines);
}

EvolvingGraph TmtNetwork::sub_network(SpineKind k) const {
  std::vector<std::shared_ptr<SpineScheduler>> sel;
  for (const auto& s : spines)
    if (s->kind() == k) sel.push_back(s);
  return compose(n, capacity, std::move(sel));
}

TmtNetwork build_network(const NetworkSpec& spec, DemandSource pending) {
  if (spec.n < 2) throw std::invalid_argument("build_network: n < 2");
  if (spec.spines.empty())
    throw std::invalid_argument("build_network: no spines");
  TmtNetwork net;
  net.n = spec.n;
  net.capacity = spec.capacity;
  long rotors = 0;
  for (const SpineSpec& s : spec.spines)
    if (s.kind == SpineKind::Rotor) ++rotors;
  MatchingSet rr = round_robin_matchings(spec.n);
  long rotor_i = 0;
  int next_static = 0;
  for (const SpineSpec& s : spec.spines) {
    switch (s.kind) {
      case SpineKind::Static: {
        // defaults are perfect round-robin matchings so an all-static
        // network stays regular; shift maps must be passed explicitly
        Matching m;
        if (s.matching) {
          m = *s.matching;
        } else {
          int idx = s.static_index > 0 ? s.static_index : next_static;
          m = rr.matchings[idx % rr.size()];
        }
        ++next_static;
        net.spines.emplace_back(static_schedule(std::move(m)));
        break;
      }
      case SpineKind::Rotor: {
        long phase = s.phase ? *s.phase : s.hold * rotor_i / rotors;
        ++rotor_i;
        net.spines.emplace_back(
            rotor_schedule(rr, s.hold, phase, s.inter_reconfig));
        break;
      }
      case SpineKind::Aware: {
        if (!pending)
          throw std::invalid_argument(
              "build_network: demand-aware spine needs a demand source");
        net.spines.emplace_back(demand_aware_schedule(
            spec.n, s.epoch, pending, s.inter_reconfig, s.greedy_matching));
        break;
      }
    }
  }
  return net;
}

TmtNetwork hybrid_network(int n, int k_static, int k_rotor, int k_aware,
                          HybridOptions opts) {
  if (k_static < 0 || k_rotor < 0 || k_aware < 0 ||
      k_static + k_rotor + k_aware < 1)
    throw std::invalid_argument("hybrid_network: need at least one spine");
  TmtNetwork net;
  net.n = n;
  MatchingSet rr = round_robin_matchings(n);
  for (int i = 0; i < k_static; ++i)
    net.spines.emplace_back(static_schedule(rr.matchings[i % rr.size()]));
  for (int i = 0; i < k_rotor; ++i) {
    long phase = opts.rotor_hold * i / k_rotor;
    net.spines.emplace_back(
        rotor_schedule(rr, opts.rotor_hold, phase, opts.inter_reconfig));
  }
  for (int i = 0; i < k_aware; ++i) {
    if (!opts.pending)
      throw std::invalid_argument(
          "hybrid_network: demand-aware spines need a pending-demand source");
    net.spines.emplace_back(demand_aware_schedule(n, opts.aware_epoch,
                                                  opts.pending,
                                                  opts.inter_reconfig,
                                                  opts.greedy_matching));
  }
  return net;
}

}  // namespace rdcn
