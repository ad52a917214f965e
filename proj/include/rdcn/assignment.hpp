#pragma once

#include "rdcn/topology.hpp"
#include "rdcn/traffic.hpp"

namespace rdcn {

// Maximum-weight perfect assignment on an n x n weight matrix (Hungarian,
// O(n^3)). Returns the permutation dst-of-src.
std::vector<int> max_weight_assignment(const std::vector<double>& w, int n);

double matching_weight(const Matching& m, const DemandMatrix& w);

// Maximum-weight matching on a demand matrix, ties broken so that the pair
// list is lexicographically smallest by (src, dst). Self pairs (zero weight
// by the diagonal invariant) are dropped, yielding a partial matching. For
// n > lex_limit the lexicographic refinement is skipped (the plain Hungarian
// answer is still deterministic) unless `greedy` picks the cheap heuristic.
Matching max_weight_matching(const DemandMatrix& w, bool greedy = false,
                             int lex_limit = 24);

}  // namespace rdcn
