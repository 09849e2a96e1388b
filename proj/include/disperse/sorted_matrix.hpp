#pragma once

#include <vector>

#include "disperse/dist_index.hpp"
#include "disperse/tree.hpp"

namespace disperse {

/// Implicit row- and column-sorted matrix over an ascending base list:
/// entry(i, j) = base[i] + base[j]. Never materialized.
struct SortedMatrix {
  std::vector<Length> base;
  size_t side() const { return base.size(); }
  Length entry(size_t i, size_t j) const { return base[i] + base[j]; }
};

/// Candidate-value matrices from the centroid decomposition: one matrix per
/// decomposition piece of two or more nodes, with base = sorted distances of
/// the piece's nodes to its centroid. Every pairwise distance of the tree
/// appears as an entry of some matrix. Total side length O(n log n),
/// construction O(n log n) by merging sorted sublists (the piece holding the
/// attachment to the outer centroid is peeled recursively, the others are
/// shifted and merged).
///
/// Non-binary trees are binarized internally; the extra zero-length
/// artificial nodes only add entries that are themselves true distances.
std::vector<SortedMatrix> centroid_matrices(const Tree& tree, const DistIndex& index);

}  // namespace disperse
