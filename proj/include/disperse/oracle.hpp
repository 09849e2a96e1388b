#pragma once

#include <vector>

#include "disperse/tree.hpp"

namespace disperse::oracle {

/// Enumeration bound for the exhaustive searches.
constexpr int32_t kMaxBruteNodes = 20;

/// Distances from s by direct traversal (no LCA index involved); the
/// independent reference used by every test suite.
std::vector<Length> dists_from(const Tree& tree, NodeId s);
std::vector<std::vector<Length>> all_pairs(const Tree& tree);

/// Scaled diameter via the classic double sweep.
Length diameter_double_sweep(const Tree& tree);

struct OracleResult {
  uint64_t best_value = 0;
  std::vector<NodeId> witness;
  Length witness_min_root_dist = kNoDist;  // scaled; kNoDist when witness empty
};

/// Maximum-cardinality selectable subset with min pairwise distance >= lambda
/// (scaled); among those, maximizes the minimum distance to the root.
OracleResult brute_search(const Tree& tree, Length lambda);

/// Exact optimum: max over k-subsets of the minimum pairwise distance (scaled).
Length brute_optimize(const Tree& tree, uint64_t k);

/// Maximum total weight of a selectable subset with min pairwise distance
/// >= lambda (scaled). With `witness`, also returns one optimal subset.
Weight brute_weighted(const Tree& tree, Length lambda,
                      std::vector<NodeId>* witness = nullptr);

/// One-pass profile over every selectable subset: best_f[c] is the largest
/// achievable min pairwise distance among subsets of size c (kNoDist for
/// c <= 1: single nodes and the empty set are unconstrained).
struct CardinalityProfile {
  std::vector<Length> best_f;
  uint64_t count_at(Length lambda) const;  // max |P| with f(P) >= lambda
};
CardinalityProfile cardinality_profile(const Tree& tree);

/// One-pass profile of (f, weight) over every selectable subset.
struct WeightProfile {
  // f descending, weights prefix-maxed: max_weight_at is a binary search
  std::vector<std::pair<Length, Weight>> fw;
  Weight max_weight_at(Length lambda) const;
};
WeightProfile weight_profile(const Tree& tree);

}  // namespace disperse::oracle
