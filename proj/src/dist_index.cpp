#include "disperse/dist_index.hpp"

namespace disperse {

DistIndex::DistIndex(const Tree& tree) {
  const int32_t n = tree.n;
  depth_.assign(n, 0);
  first_pos_.assign(n, 0);
  euler_.reserve(2 * n - 1);
  euler_depth_.reserve(2 * n - 1);

  // Iterative Euler tour; the entry for a node repeats after each child.
  std::vector<uint32_t> level(n, 0);
  std::vector<std::pair<NodeId, size_t>> stack;
  stack.push_back({tree.root, 0});
  while (!stack.empty()) {
    auto& [v, ci] = stack.back();
    if (ci == 0) {
      if (v != tree.root) {
        depth_[v] = depth_[tree.parent[v]] + tree.edge_length[v];
        level[v] = level[tree.parent[v]] + 1;
      }
      first_pos_[v] = static_cast<uint32_t>(euler_.size());
      euler_.push_back(v);
      euler_depth_.push_back(level[v]);
    }
    if (ci < tree.children[v].size()) {
      NodeId c = tree.children[v][ci];
      ++ci;
      stack.push_back({c, 0});
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        NodeId p = stack.back().first;
        euler_.push_back(p);
        euler_depth_.push_back(level[p]);
      }
    }
  }

  const uint32_t m = static_cast<uint32_t>(euler_.size());
  log2_.assign(m + 1, 0);
  for (uint32_t i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  const uint32_t levels = log2_[m] + 1;
  table_.assign(levels, std::vector<uint32_t>());
  table_[0].resize(m);
  for (uint32_t i = 0; i < m; ++i) table_[0][i] = i;
  for (uint32_t k = 1; k < levels; ++k) {
    const uint32_t span = 1u << k;
    table_[k].resize(m - span + 1);
    for (uint32_t i = 0; i + span <= m; ++i) {
      uint32_t x = table_[k - 1][i], y = table_[k - 1][i + span / 2];
      table_[k][i] = euler_depth_[x] <= euler_depth_[y] ? x : y;
    }
  }
}

}  // namespace disperse
