#include "disperse/sorted_matrix.hpp"

#include <algorithm>
#include <memory>

namespace disperse {

namespace {

struct Call {
  NodeId centroid = kNoNode;
  NodeId attach = kNoNode;     // node of this piece adjacent to the parent centroid
  Length attach_len = 0;       // length of the edge (attach, parent centroid)
  int32_t size = 0;
  int32_t subcalls[3] = {-1, -1, -1};
  int32_t nsub = 0;
  uint32_t tin = 0, tout = 0;  // euler interval in the call tree
};

struct Builder {
  const Tree& tree;
  const DistIndex& index;
  std::vector<std::vector<std::pair<NodeId, Length>>> adj;
  std::vector<uint8_t> removed;
  std::vector<int32_t> sz;
  std::vector<Call> calls;
  std::vector<int32_t> call_of;  // call in which the node is the centroid

  explicit Builder(const Tree& t, const DistIndex& idx)
      : tree(t), index(idx), adj(t.n), removed(t.n, 0), sz(t.n, 0), call_of(t.n, -1) {
    for (NodeId v = 0; v < t.n; ++v) {
      if (v == t.root) continue;
      adj[v].push_back({t.parent[v], t.edge_length[v]});
      adj[t.parent[v]].push_back({v, t.edge_length[v]});
    }
  }

  int32_t compute_sizes(NodeId start) {
    int32_t total = 0;
    std::vector<std::pair<NodeId, NodeId>> stack{{start, kNoNode}};
    std::vector<NodeId> order;
    std::vector<NodeId> par;
    while (!stack.empty()) {
      auto [v, p] = stack.back();
      stack.pop_back();
      order.push_back(v);
      par.push_back(p);
      sz[v] = 1;
      ++total;
      for (auto [w, len] : adj[v]) {
        (void)len;
        if (w != p && !removed[w]) stack.push_back({w, v});
      }
    }
    for (size_t i = order.size(); i-- > 1;) sz[par[i]] += sz[order[i]];
    return total;
  }

  NodeId find_centroid(NodeId start, int32_t total) {
    // walk toward the heavy side; ties broken by lowest node id
    NodeId v = start, prev = kNoNode;
    for (;;) {
      NodeId heavy = kNoNode;
      int32_t heavy_sz = 0;
      for (auto [w, len] : adj[v]) {
        (void)len;
        if (w == prev || removed[w]) continue;
        int32_t s = sz[w] < sz[v] && sz_parent_ok(v, w) ? sz[w] : 0;
        (void)s;
      }
      // recompute component sizes around v directly
      int32_t worst = 0;
      NodeId worst_n = kNoNode;
      int32_t below = 1;
      for (auto [w, len] : adj[v]) {
        (void)len;
        if (removed[w]) continue;
        int32_t s = (w == parent_in_walk(v, w)) ? 0 : 0;
        (void)s;
      }
      (void)heavy;
      (void)heavy_sz;
      (void)worst;
      (void)worst_n;
      (void)below;
      (void)prev;
      break;
    }
    // fallback below
    return centroid_scan(start, total);
  }

  static bool sz_parent_ok(NodeId, NodeId) { return true; }
  static NodeId parent_in_walk(NodeId, NodeId) { return kNoNode; }

  // Deterministic centroid: scan the whole piece, pick the smallest-id node
  // whose largest remaining component has at most total/2 nodes.
  NodeId centroid_scan(NodeId start, int32_t total) {
    std::vector<std::pair<NodeId, NodeId>> stack{{start, kNoNode}};
    std::vector<std::pair<NodeId, NodeId>> order;  // (node, parent)
    while (!stack.empty()) {
      auto [v, p] = stack.back();
      stack.pop_back();
      order.push_back({v, p});
      for (auto [w, len] : adj[v]) {
        (void)len;
        if (w != p && !removed[w]) stack.push_back({w, v});
      }
    }
    // sz[] was filled by compute_sizes rooted at start
    NodeId best = kNoNode;
    for (auto [v, p] : order) {
      (void)p;
      int32_t worst = total - sz[v];
      for (auto [w, len] : adj[v]) {
        (void)len;
        if (removed[w]) continue;
        bool is_child = sz[w] < sz[v] || (sz[w] == sz[v] && false);
        (void)is_child;
      }
      (void)worst;
    }
    // recompute cleanly: for each node, the largest component after removal
    // is max over child subtree sizes and total - sz[v]
    for (auto [v, p] : order) {
      int32_t worst = total - sz[v];
      for (auto [w, len] : adj[v]) {
        (void)len;
        if (w == p || removed[w]) continue;
        worst = std::max(worst, sz[w]);
      }
      if (worst <= total / 2 && (best == kNoNode || v < best)) best = v;
    }
    return best;
  }

  int32_t decompose(NodeId start, NodeId attach, Length attach_len) {
    int32_t total = compute_sizes(start);
    NodeId c = centroid_scan(start, total);
    int32_t id = static_cast<int32_t>(calls.size());
    calls.push_back({});
    calls[id].centroid = c;
    calls[id].attach = attach;
    calls[id].attach_len = attach_len;
    calls[id].size = total;
    call_of[c] = id;
    removed[c] = 1;
    for (auto [w, len] : adj[c]) {
      if (removed[w]) continue;
      int32_t sub = decompose(w, w, len);
      calls[id].subcalls[calls[id].nsub++] = sub;
    }
    return id;
  }

  void euler() {
    uint32_t t = 0;
    auto rec = [&](auto&& self, int32_t id) -> void {
      calls[id].tin = t++;
      for (int32_t i = 0; i < calls[id].nsub; ++i) self(self, calls[id].subcalls[i]);
      calls[id].tout = t;
    };
    rec(rec, 0);
  }

  bool call_contains(int32_t id, NodeId node) const {
    int32_t cn = call_of[node];
    return calls[id].tin <= calls[cn].tin && calls[cn].tin < calls[id].tout;
  }
};

std::vector<Length> merge_lists(std::vector<std::vector<Length>>& parts) {
  // repeatedly merge the two shortest parts
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  while (parts.size() > 1) {
    auto a = std::move(parts.back());
    parts.pop_back();
    auto b = std::move(parts.back());
    parts.pop_back();
    std::vector<Length> m(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), m.begin());
    parts.push_back(std::move(m));
    for (size_t i = parts.size(); i-- > 1;)
      if (parts[i].size() > parts[i - 1].size()) std::swap(parts[i], parts[i - 1]);
  }
  return parts.empty() ? std::vector<Length>{} : std::move(parts[0]);
}

}  // namespace

std::vector<SortedMatrix> centroid_matrices(const Tree& tree, const DistIndex& index) {
  if (tree.n <= 1) return {};

  const Tree* work = &tree;
  std::unique_ptr<Tree> bin_tree;
  std::unique_ptr<DistIndex> bin_index;
  const DistIndex* work_index = &index;
  if (!tree.is_binary()) {
    auto b = binarize(tree);
    bin_tree = std::make_unique<Tree>(std::move(b.tree));
    bin_index = std::make_unique<DistIndex>(*bin_tree);
    work = bin_tree.get();
    work_index = bin_index.get();
  }

  Builder bld(*work, *work_index);
  bld.decompose(work->root, kNoNode, 0);
  bld.euler();
  const auto& calls = bld.calls;

  std::vector<std::vector<Length>> list_to_centroid(calls.size());  // L(call)
  std::vector<std::vector<Length>> contrib(calls.size());  // dists to parent centroid

  // peel(call, t): sorted distances of the call's piece nodes to t (a node
  // in the piece). Non-target subpieces contribute their stored lists
  // shifted through the centroid; the subpiece holding t is peeled deeper.
  auto peel = [&](auto&& self, int32_t id, NodeId t) -> std::vector<Length> {
    const Call& c = calls[id];
    if (c.size == 1) return {0};
    if (t == c.centroid) return list_to_centroid[id];
    Length dct = bld.index.dist(c.centroid, t);
    std::vector<std::vector<Length>> parts;
    parts.push_back({dct});
    for (int32_t i = 0; i < c.nsub; ++i) {
      int32_t s = c.subcalls[i];
      if (bld.call_contains(s, t)) {
        parts.push_back(self(self, s, t));
      } else {
        std::vector<Length> shifted(contrib[s].size());
        for (size_t j = 0; j < contrib[s].size(); ++j) shifted[j] = contrib[s][j] + dct;
        parts.push_back(std::move(shifted));
      }
    }
    return merge_lists(parts);
  };

  // bottom-up: children of a call have larger ids than the call itself
  for (size_t id = calls.size(); id-- > 0;) {
    const Call& c = calls[id];
    std::vector<std::vector<Length>> parts;
    parts.push_back({0});
    for (int32_t i = 0; i < c.nsub; ++i) {
      int32_t s = c.subcalls[i];
      std::vector<Length> shifted(contrib[s].size());
      Length d = calls[s].attach_len;
      for (size_t j = 0; j < contrib[s].size(); ++j) shifted[j] = contrib[s][j] + d;
      parts.push_back(std::move(shifted));
    }
    list_to_centroid[id] = merge_lists(parts);
    if (c.attach != kNoNode) {
      contrib[id] = peel(peel, static_cast<int32_t>(id), c.attach);
    }
  }

  std::vector<SortedMatrix> out;
  for (size_t id = 0; id < calls.size(); ++id)
    if (calls[id].size >= 2) out.push_back({std::move(list_to_centroid[id])});
  return out;
}

}  // namespace disperse
