#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdcn/core.hpp"

namespace rdcn {

// n x n non-negative rate matrix in capacity units per slot; zero diagonal.
struct DemandMatrix {
  int n = 0;
  std::vector<double> rates;  // row-major

  DemandMatrix() = default;
  explicit DemandMatrix(int n_) : n(n_), rates(size_t(n_) * n_, 0.0) {}

  double& at(int i, int j) { return rates[size_t(i) * n + j]; }
  double at(int i, int j) const { return rates[size_t(i) * n + j]; }

  double total() const;
  static DemandMatrix uniform(int n, double row_sum);
  static DemandMatrix permutation(const std::vector<NodeId>& perm, double rate);
};

// Sinkhorn-style alternating row/column normalization until every row and
// column sums to c (max deviation < 1e-9) or 200 iterations. Throws if the
// zero pattern admits no doubly-balanced scaling.
DemandMatrix saturate(const DemandMatrix& T, double c);

enum class FlowClassHint { Mice, Elephant, AllToAll };

struct FlowEvent {
  long arrival = 0;
  NodeId src = 0;
  NodeId dst = 0;
  double size = 1.0;  // capacity-slot units
  std::optional<FlowClassHint> class_hint;
};

using Trace = std::vector<FlowEvent>;

enum class TraceKind { Uniform, Permutation, ZipfSkewed, MlRingPeriodic, ConstantPair };

TraceKind trace_kind_from_string(const std::string& s);
std::string to_string(TraceKind k);

// Deterministic given seed. One event per slot position (arrival = index).
Trace gen_trace(TraceKind kind, int n, long length, uint64_t seed,
                double size = 1.0);

// Per-window demand matrices; entry = bytes per slot averaged over window.
std::vector<DemandMatrix> aggregate(const Trace& trace, long window, int n);

struct ComplexityPoint {
  double temporal = 0.0;
  double spatial = 0.0;
};

// Entropy scores of a trace relative to an unstructured one, both in [0,1].
// spatial: plug-in entropy of the empirical pair distribution over
// log(n(n-1)); temporal: order-1 Markov conditional entropy (Miller-Madow
// corrected) of the pair sequence over the same estimate on a shuffled copy.
// Requires length >= 10 n^2.
ComplexityPoint complexity_map(const Trace& trace, int n);

// CSV with header "t,src,dst,size", one event per line.
Trace read_trace_csv(const std::string& path);
void write_trace_csv(const Trace& trace, const std::string& path);

}  // namespace rdcn
