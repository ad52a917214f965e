#include "rdcn/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace rdcn {

double DemandMatrix::total() const {
  double s = 0.0;
  for (double r : rates) s += r;
  return s;
}

DemandMatrix DemandMatrix::uniform(int n, double row_sum) {
  DemandMatrix T(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) T.at(i, j) = row_sum / (n - 1);
  return T;
}

DemandMatrix DemandMatrix::permutation(const std::vector<NodeId>& perm,
                                       double rate) {
  DemandMatrix T(static_cast<int>(perm.size()));
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<NodeId>(i)) T.at(static_cast<int>(i), perm[i]) = rate;
  return T;
}

DemandMatrix saturate(const DemandMatrix& T, double c) {
  int n = T.n;
  std::vector<bool> active(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (T.at(i, j) > 0.0) active[i] = active[j] = true;
  for (int i = 0; i < n; ++i) {
    if (!active[i]) continue;
    double row = 0.0, col = 0.0;
    for (int j = 0; j < n; ++j) {
      row += T.at(i, j);
      col += T.at(j, i);
    }
    if (row == 0.0 || col == 0.0)
      throw std::invalid_argument(
          "saturate: active node with an all-zero row or column");
  }
  DemandMatrix S = T;
  const double tol = 1e-9;
  for (int iter = 0; iter < 200; ++iter) {
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += S.at(i, j);
      for (int j = 0; j < n; ++j) S.at(i, j) *= c / row;
    }
    for (int j = 0; j < n; ++j) {
      if (!active[j]) continue;
      double col = 0.0;
      for (int i = 0; i < n; ++i) col += S.at(i, j);
      for (int i = 0; i < n; ++i) S.at(i, j) *= c / col;
    }
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        row += S.at(i, j);
        col += S.at(j, i);
      }
      dev = std::max({dev, std::abs(row - c), std::abs(col - c)});
    }
    if (dev < tol) return S;
  }
  throw std::runtime_error(
      "saturate: no doubly-balanced scaling for this zero pattern");
}

TraceKind trace_kind_from_string(const std::string& s) {
  if (s == "uniform") return TraceKind::Uniform;
  if (s == "permutation") return TraceKind::Permutation;
  if (s == "zipf-skewed") return TraceKind::ZipfSkewed;
  if (s == "ml-ring-periodic") return TraceKind::MlRingPeriodic;
  if (s == "constant-pair") return TraceKind::ConstantPair;
  throw std::invalid_argument("unknown trace kind: " + s);
}

std::string to_string(TraceKind k) {
  switch (k) {
    case TraceKind::Uniform: return "uniform";
    case TraceKind::Permutation: return "permutation";
    case TraceKind::ZipfSkewed: return "zipf-skewed";
    case TraceKind::MlRingPeriodic: return "ml-ring-periodic";
    case TraceKind::ConstantPair: return "constant-pair";
  }
  return "?";
}

Trace gen_trace(TraceKind kind, int n, long length, uint64_t seed,
                double size) {
  if (length < 1) throw std::invalid_argument("gen_trace: length < 1");
  if (n < 2) throw std::invalid_argument("gen_trace: n < 2");
  Rng rng(seed);
  Trace trace;
  trace.reserve(length);
  auto push = [&](long t, NodeId s, NodeId d) {
    trace.push_back({t, s, d, size, std::nullopt});
  };
  switch (kind) {
    case TraceKind::Uniform: {
      for (long t = 0; t < length; ++t) {
        NodeId s = static_cast<NodeId>(rng.below(n));
        NodeId d = static_cast<NodeId>(rng.below(n - 1));
        if (d >= s) ++d;
        push(t, s, d);
      }
      break;
    }
    case TraceKind::Permutation: {
      std::vector<NodeId> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      // fixed random cyclic shift composition: shuffle until derangement
      do {
        rng.shuffle(perm);
      } while ([&] {
        for (int i = 0; i < n; ++i)
          if (perm[i] == i) return true;
        return false;
      }());
      for (long t = 0; t < length; ++t) {
        NodeId s = static_cast<NodeId>(t % n);
        push(t, s, perm[s]);
      }
      break;
    }
    case TraceKind::ZipfSkewed: {
      const double alpha = 1.2;
      std::vector<Edge> pairs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) pairs.push_back({i, j});
      rng.shuffle(pairs);  // seeded rank-to-pair assignment
      std::vector<double> cdf(pairs.size());
      double acc = 0.0;
      for (size_t k = 0; k < pairs.size(); ++k) {
        acc += std::pow(static_cast<double>(k + 1), -alpha);
        cdf[k] = acc;
      }
      for (long t = 0; t < length; ++t) {
        double u = rng.unit() * acc;
        size_t k = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (k >= pairs.size()) k = pairs.size() - 1;
        push(t, pairs[k].src, pairs[k].dst);
      }
      break;
    }
    case TraceKind::MlRingPeriodic: {
      for (long t = 0; t < length; ++t) {
        NodeId s = static_cast<NodeId>(t % n);
        push(t, s, (s + 1) % n);
      }
      break;
    }
    case TraceKind::ConstantPair: {
      NodeId s = static_cast<NodeId>(rng.below(n));
      NodeId d = static_cast<NodeId>(rng.below(n - 1));
      if (d >= s) ++d;
      for (long t = 0; t < length; ++t) push(t, s, d);
      break;
    }
  }
  return trace;
}

std::vector<DemandMatrix> aggregate(const Trace& trace, long window, int n) {
  if (window < 1) throw std::invalid_argument("aggregate: window < 1");
  long horizon = 0;
  for (const FlowEvent& ev : trace) horizon = std::max(horizon, ev.arrival + 1);
  long windows = (horizon + window - 1) / window;
  std::vector<DemandMatrix> out(std::max<long>(windows, 1), DemandMatrix(n));
  for (const FlowEvent& ev : trace)
    out[ev.arrival / window].at(ev.src, ev.dst) += ev.size / window;
  return out;
}

namespace {

// plug-in entropy in nats over observed counts
double plugin_entropy(const std::map<long, long>& counts, long total) {
  double h = 0.0;
  for (const auto& [sym, c] : counts) {
    (void)sym;
    double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

double miller_madow_entropy(const std::map<long, long>& counts, long total) {
  return plugin_entropy(counts, total) +
         static_cast<double>(counts.size() - 1) / (2.0 * total);
}

// order-1 Markov conditional entropy H(X_{k+1} | X_k), Miller-Madow corrected
double conditional_entropy(const std::vector<long>& seq) {
  if (seq.size() < 2) return 0.0;
  std::map<long, long> joint, marg;
  long pairs = static_cast<long>(seq.size()) - 1;
  for (long k = 0; k < pairs; ++k) {
    joint[seq[k] * 1000003 + seq[k + 1]] += 1;
    marg[seq[k]] += 1;
  }
  double h = miller_madow_entropy(joint, pairs) -
             miller_madow_entropy(marg, pairs);
  return std::max(h, 0.0);
}

}  // namespace

ComplexityPoint complexity_map(const Trace& trace, int n) {
  long min_len = 10L * n * n;
  if (static_cast<long>(trace.size()) < min_len)
    throw std::invalid_argument("complexity_map: trace shorter than 10*n^2");
  std::vector<long> seq;
  seq.reserve(trace.size());
  std::map<long, long> pair_counts;
  for (const FlowEvent& ev : trace) {
    long sym = static_cast<long>(ev.src) * n + ev.dst;
    seq.push_back(sym);
    pair_counts[sym] += 1;
  }
  long total = static_cast<long>(seq.size());
  ComplexityPoint pt;
  double denom = std::log(static_cast<double>(n) * (n - 1));
  pt.spatial = std::clamp(plugin_entropy(pair_counts, total) / denom, 0.0, 1.0);

  double h1 = conditional_entropy(seq);
  std::vector<long> shuffled = seq;
  // label-independent shuffle baseline: seed depends only on the length
  Rng baseline(0x9e3779b97f4a7c15ULL ^ static_cast<uint64_t>(total));
  baseline.shuffle(shuffled);
  double h0 = conditional_entropy(shuffled);
  pt.temporal = h0 < 1e-12 ? 0.0 : std::clamp(h1 / h0, 0.0, 1.0);
  return pt;
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,src,dst,size", 0) != 0)
    throw std::runtime_error("trace file missing 't,src,dst,size' header: " +
                             path);
  Trace trace;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    FlowEvent ev;
    char c1, c2, c3;
    if (!(ss >> ev.arrival >> c1 >> ev.src >> c2 >> ev.dst >> c3 >> ev.size) ||
        c1 != ',' || c2 != ',' || c3 != ',')
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed trace line");
    if (ev.src == ev.dst || ev.size <= 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": invalid flow event");
    trace.push_back(ev);
  }
  return trace;
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out << "t,src,dst,size\n";
  for (const FlowEvent& ev : trace)
    out << ev.arrival << ',' << ev.src << ',' << ev.dst << ',' << ev.size
        << '\n';
}

}  // namespace rdcn
