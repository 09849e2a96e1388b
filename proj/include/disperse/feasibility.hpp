#pragma once

#include <optional>
#include <vector>

#include "disperse/dist_index.hpp"
#include "disperse/tree.hpp"

namespace disperse {

/// Result of the linear-time feasibility test on the whole tree.
///
/// `candidate` is the unique chosen node (if any) with 2*dist < lambda from
/// the root; `certain_nearest` the nearest chosen node with 2*dist >= lambda.
/// `nearest_dist` is the distance of the closest chosen node overall --
/// among maximum-cardinality solutions the test maximizes it.
struct Solution {
  uint64_t count = 0;
  std::optional<std::pair<NodeId, Length>> candidate;
  std::optional<std::pair<NodeId, Length>> certain_nearest;
  Length nearest_dist = kNoDist;
  std::vector<NodeId> members;  // filled when collect_members is set
  uint64_t visits = 0;          // node-visit counter (<= 3n)
};

/// Maximum-cardinality subset of selectable nodes with pairwise distances
/// >= lambda (scaled x2 domain), computed bottom-up in one pass. Pure given
/// (tree, index); concurrent calls on a shared tree are safe.
Solution feasibility_test(const Tree& tree, const DistIndex& index, Length lambda,
                          bool collect_members = false);

bool is_feasible(const Tree& tree, const DistIndex& index, uint64_t k, Length lambda);

}  // namespace disperse
