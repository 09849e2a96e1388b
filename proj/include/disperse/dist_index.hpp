#pragma once

#include <vector>

#include "disperse/tree.hpp"

namespace disperse {

/// Constant-time pairwise distances via depths plus an Euler-tour sparse
/// table for LCA. Immutable after construction; concurrent queries are safe.
class DistIndex {
 public:
  explicit DistIndex(const Tree& tree);

  NodeId lca(NodeId u, NodeId v) const {
    uint32_t a = first_pos_[u], b = first_pos_[v];
    if (a > b) std::swap(a, b);
    return euler_[rmq(a, b + 1)];
  }

  /// Scaled (x2) distance between u and v.
  Length dist(NodeId u, NodeId v) const {
    NodeId a = lca(u, v);
    return depth_[u] + depth_[v] - 2 * depth_[a];
  }

  Length depth(NodeId v) const { return depth_[v]; }
  const std::vector<Length>& depths() const { return depth_; }

 private:
  // index of the minimum-depth euler position in [l, r)
  uint32_t rmq(uint32_t l, uint32_t r) const {
    uint32_t k = log2_[r - l];
    uint32_t x = table_[k][l], y = table_[k][r - (1u << k)];
    return euler_depth_[x] <= euler_depth_[y] ? x : y;
  }

  std::vector<Length> depth_;
  std::vector<NodeId> euler_;
  std::vector<uint32_t> euler_depth_;  // tree depth in edges, for RMQ compare
  std::vector<uint32_t> first_pos_;
  std::vector<std::vector<uint32_t>> table_;
  std::vector<uint8_t> log2_;
};

}  // namespace disperse
