#pragma once

#include <functional>
#include <memory>

#include "rdcn/evolving_graph.hpp"
#include "rdcn/topology.hpp"
#include "rdcn/traffic.hpp"

namespace rdcn {

enum class SpineKind { Static, Rotor, Aware };

std::string to_string(SpineKind k);
SpineKind spine_kind_from_string(const std::string& s);

// Pending-demand source queried by demand-aware spines: unserved bytes per
// pair at the start of slot t.
using DemandSource = std::function<DemandMatrix(long)>;

// One spine switch controller; emits a matching per timeslot.
class SpineScheduler {
 public:
  virtual ~SpineScheduler() = default;
  virtual Matching at(long t) const = 0;
  virtual SpineKind kind() const = 0;
  // 0 means aperiodic (demand-aware)
  virtual long period() const = 0;
};

// Emits the same matching at every slot; zero reconfigurations.
std::unique_ptr<SpineScheduler> static_schedule(Matching m);

// Emits ms[floor((t + phase)/hold) mod |ms|]; Gamma = hold * |ms|.
// hold = 1 would leave every slot a reconfiguration slot and is rejected.
std::unique_ptr<SpineScheduler> rotor_schedule(MatchingSet ms, long hold,
                                               long phase = 0,
                                               long inter_reconfig = 0);

// Recomputes a maximum-weight matching on the pending demand at each epoch
// boundary and holds it for the epoch. Ties broken lexicographically.
std::unique_ptr<SpineScheduler> demand_aware_schedule(
    int n, long epoch, DemandSource pending, long inter_reconfig = 0,
    bool greedy = false);

struct TmtNetwork {
  int n = 0;
  double capacity = 1.0;
  std::vector<std::shared_ptr<SpineScheduler>> spines;

  size_t count(SpineKind k) const;

  // Union of the spine matchings per slot; coincident edges add capacity.
  // The network must outlive the returned graph.
  EvolvingGraph evolve() const;

  // Sub-network restricted to spines of one kind (empty layer list if none).
  EvolvingGraph sub_network(SpineKind k) const;
};

// Declarative spine description, used by the experiment config and the
// simulation engine.
struct SpineSpec {
  SpineKind kind = SpineKind::Static;
  std::optional<Matching> matching;  // static; defaults by static_index
  int static_index = 0;
  long hold = 5;                 // rotor
  std::optional<long> phase;     // rotor; default staggered
  long epoch = 10;               // aware
  long inter_reconfig = 0;
  bool greedy_matching = false;
};

struct NetworkSpec {
  int n = 0;
  double capacity = 1.0;
  std::vector<SpineSpec> spines;
};

// Instantiates schedulers from a spec; `pending` is required when any spine
// is demand-aware.
TmtNetwork build_network(const NetworkSpec& spec, DemandSource pending = {});

struct HybridOptions {
  long rotor_hold = 5;
  long aware_epoch = 10;
  long inter_reconfig = 0;
  DemandSource pending;  // required when k_aware > 0
  bool greedy_matching = false;
};

// Cerberus-style composition: k_static + k_rotor + k_aware spines over
// disjoint switches. Static spines take round-robin matchings in order
// (De Bruijn shift matchings when n is a power of two), rotor spines rotate
// over the full round-robin set with staggered phases.
TmtNetwork hybrid_network(int n, int k_static, int k_rotor, int k_aware,
                          HybridOptions opts = {});

}  // namespace rdcn
