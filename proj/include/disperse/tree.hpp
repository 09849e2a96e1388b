#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "disperse/common.hpp"

namespace disperse {

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Length length = 0;  // raw (unscaled) length
};

/// Rooted tree with non-negative integer edge lengths and node weights.
///
/// Edge lengths are scaled x2 at construction so that every comparison the
/// solvers make against lambda/2 stays integral. All values reported to users
/// are unscaled again on output. Instances are immutable after construction
/// and safe to share between concurrent read-only queries.
struct Tree {
  int32_t n = 0;
  NodeId root = 0;
  std::vector<NodeId> parent;        // parent[root] == kNoNode
  std::vector<Length> edge_length;   // scaled x2, length of edge to parent
  std::vector<Weight> weight;
  std::vector<uint8_t> selectable;   // 0 for binarization-artificial nodes
  std::vector<std::vector<NodeId>> children;

  int32_t selectable_count() const {
    int32_t c = 0;
    for (uint8_t s : selectable) c += s;
    return c;
  }
  Weight total_selectable_weight() const {
    Weight w = 0;
    for (NodeId v = 0; v < n; ++v)
      if (selectable[v]) w = checked_add(w, weight[v]);
    return w;
  }
  bool is_binary() const {
    for (const auto& c : children)
      if (c.size() > 2) return false;
    return true;
  }
  /// Nodes in parent-before-child order (root first).
  std::vector<NodeId> topo_order() const;
};

/// Builds and validates a tree from an edge list with raw lengths.
/// Lengths are scaled x2 internally. Throws InputError on anything that is
/// not a single rooted tree, on negative-looking inputs, or when a
/// root-to-leaf path would overflow the 62-bit scaled budget.
Tree build_tree(const std::vector<Edge>& edges, NodeId root,
                const std::optional<std::vector<Weight>>& weights = std::nullopt);

/// Same as build_tree but the given lengths are taken as already scaled.
/// Used by instance constructions that need half-integral raw lengths.
Tree build_tree_scaled(const std::vector<Edge>& edges, NodeId root,
                       const std::optional<std::vector<Weight>>& weights = std::nullopt);

struct BinarizeResult {
  Tree tree;
  // original id for every node of `tree`, kNoNode for artificial nodes
  std::vector<NodeId> orig_of;
  // node of `tree` for every original id
  std::vector<NodeId> new_of;
};

/// Expands every node with more than two children into a zero-length binary
/// cascade. Artificial nodes get weight 0 and selectable = false, so pairwise
/// distances between original nodes and the solution space are unchanged.
BinarizeResult binarize(const Tree& tree);

/// Text format:
///   line 1:        `n root`
///   next n-1 lines `u v length`   (0-based ids, raw integer lengths)
///   optional line  `weights w0 w1 ... w(n-1)`
/// '#' starts a comment, blank lines are skipped.
Tree read_tree(std::istream& in);
Tree read_tree_file(const std::string& path);
void write_tree(std::ostream& out, const Tree& tree, bool with_weights);

}  // namespace disperse
