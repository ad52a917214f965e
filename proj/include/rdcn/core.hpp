#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace rdcn {

using NodeId = int;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  auto operator<=>(const Edge&) const = default;
};

using EdgeList = std::vector<Edge>;

// Deterministic RNG wrapper. std::uniform_int_distribution is
// implementation-defined, so sampling is done by hand to keep reports
// byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // integer in [0, bound)
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound 0");
    return gen_() % bound;
  }

  double unit() {  // in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rdcn
