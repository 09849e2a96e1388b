#include "disperse/tree.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace disperse {

std::vector<NodeId> Tree::topo_order() const {
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (NodeId c : children[v]) stack.push_back(c);
  }
  return order;
}

namespace {

Tree build_impl(const std::vector<Edge>& edges, NodeId root,
                const std::optional<std::vector<Weight>>& weights, bool scale) {
  const int64_t n64 = static_cast<int64_t>(edges.size()) + 1;
  if (n64 < 1 || n64 > (int64_t{1} << 31) - 1) throw InputError("node count out of range");
  const int32_t n = static_cast<int32_t>(n64);
  if (root < 0 || root >= n) throw InputError("root id out of range");

  std::vector<std::vector<std::pair<NodeId, Length>>> adj(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw InputError("edge endpoint out of range");
    if (e.u == e.v) throw InputError("not a tree: self-loop at node " + std::to_string(e.u));
    Length len = e.length;
    if (scale) {
      if (len > kMaxPathLength) throw InputError("edge length exceeds the 62-bit budget");
      len *= 2;
    }
    adj[e.u].push_back({e.v, len});
    adj[e.v].push_back({e.u, len});
  }

  Tree t;
  t.n = n;
  t.root = root;
  t.parent.assign(n, kNoNode);
  t.edge_length.assign(n, 0);
  t.children.assign(n, {});
  t.selectable.assign(n, 1);
  if (weights) {
    if (static_cast<int32_t>(weights->size()) != n)
      throw InputError("weight list size does not match node count");
    t.weight = *weights;
  } else {
    t.weight.assign(n, 1);
  }

  // Orient edges away from the root; every node must be reached exactly once.
  std::vector<uint8_t> seen(n, 0);
  std::vector<NodeId> stack{root};
  seen[root] = 1;
  int32_t reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (auto [w, len] : adj[v]) {
      if (w == t.parent[v] && len == t.edge_length[v]) continue;
      if (seen[w]) throw InputError("not a tree: duplicate edge or cycle through node " +
                                    std::to_string(w));
      seen[w] = 1;
      ++reached;
      t.parent[w] = v;
      t.edge_length[w] = len;
      t.children[v].push_back(w);
      stack.push_back(w);
    }
  }
  if (reached != n) throw InputError("not a tree: input is disconnected");
  for (auto& c : t.children) std::sort(c.begin(), c.end());

  // Path-length budget: depth of every node with checked accumulation.
  std::vector<Length> depth(n, 0);
  for (NodeId v : t.topo_order()) {
    if (v == root) continue;
    depth[v] = checked_add(depth[t.parent[v]], t.edge_length[v]);
    if (depth[v] > kMaxPathLength)
      throw InputError("root-to-leaf path exceeds the 62-bit scaled budget");
  }
  t.total_selectable_weight();  // throws on weight-sum overflow
  return t;
}

}  // namespace

Tree build_tree(const std::vector<Edge>& edges, NodeId root,
                const std::optional<std::vector<Weight>>& weights) {
  return build_impl(edges, root, weights, /*scale=*/true);
}

Tree build_tree_scaled(const std::vector<Edge>& edges, NodeId root,
                       const std::optional<std::vector<Weight>>& weights) {
  return build_impl(edges, root, weights, /*scale=*/false);
}

BinarizeResult binarize(const Tree& tree) {
  BinarizeResult r;
  std::vector<Edge> edges;
  std::vector<Weight> weights;
  std::vector<uint8_t> selectable;
  r.new_of.assign(tree.n, kNoNode);
  r.orig_of.clear();

  auto add_node = [&](NodeId orig) {
    NodeId id = static_cast<NodeId>(r.orig_of.size());
    r.orig_of.push_back(orig);
    if (orig != kNoNode) {
      r.new_of[orig] = id;
      weights.push_back(tree.weight[orig]);
      selectable.push_back(tree.selectable[orig]);
    } else {
      weights.push_back(0);
      selectable.push_back(0);
    }
    return id;
  };

  for (NodeId v = 0; v < tree.n; ++v) add_node(v);

  for (NodeId v : tree.topo_order()) {
    const auto& cs = tree.children[v];
    NodeId attach = r.new_of[v];
    for (size_t i = 0; i < cs.size(); ++i) {
      const size_t remaining = cs.size() - i;
      if (remaining > 2) {
        // attach one child here, cascade the rest below an artificial node
        edges.push_back({attach, r.new_of[cs[i]], tree.edge_length[cs[i]]});
        NodeId art = add_node(kNoNode);
        edges.push_back({attach, art, 0});
        attach = art;
      } else {
        edges.push_back({attach, r.new_of[cs[i]], tree.edge_length[cs[i]]});
      }
    }
  }

  r.tree = build_tree_scaled(edges, r.new_of[tree.root], weights);
  for (NodeId v = 0; v < r.tree.n; ++v) r.tree.selectable[v] = selectable[v];
  return r;
}

Tree read_tree(std::istream& in) {
  std::vector<std::string> lines;
  std::string raw;
  std::vector<int> line_no;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(raw);
    line_no.push_back(ln);
  }
  if (lines.empty()) throw InputError("tree file: empty input");

  auto fail = [&](size_t i, const std::string& msg) -> void {
    throw InputError("tree file line " + std::to_string(line_no[i]) + ": " + msg);
  };

  int64_t n = 0, root = 0;
  {
    std::istringstream h(lines[0]);
    if (!(h >> n >> root)) fail(0, "expected `n root`");
    if (n < 1) fail(0, "node count must be positive");
  }
  if (static_cast<int64_t>(lines.size()) < n) fail(lines.size() - 1, "missing edge lines");

  std::vector<Edge> edges;
  for (int64_t i = 1; i < n; ++i) {
    std::istringstream s(lines[i]);
    int64_t u, v, len;
    if (!(s >> u >> v >> len)) fail(i, "expected `u v length`");
    if (len < 0) fail(i, "negative edge length");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v),
                     static_cast<Length>(len)});
  }

  std::optional<std::vector<Weight>> weights;
  if (static_cast<int64_t>(lines.size()) > n) {
    size_t i = static_cast<size_t>(n);
    std::istringstream s(lines[i]);
    std::string kw;
    s >> kw;
    if (kw != "weights") fail(i, "expected `weights ...` or end of file");
    std::vector<Weight> w;
    int64_t x;
    while (s >> x) {
      if (x < 0) fail(i, "negative weight");
      w.push_back(static_cast<Weight>(x));
    }
    if (static_cast<int64_t>(w.size()) != n) fail(i, "weights line must list one value per node");
    weights = std::move(w);
    if (lines.size() > i + 1) fail(i + 1, "unexpected trailing content");
  }

  try {
    return build_tree(edges, static_cast<NodeId>(root), weights);
  } catch (const InputError& e) {
    throw InputError(std::string("tree file: ") + e.what());
  }
}

Tree read_tree_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open tree file: " + path);
  return read_tree(f);
}

void write_tree(std::ostream& out, const Tree& tree, bool with_weights) {
  out << tree.n << ' ' << tree.root << '\n';
  for (NodeId v = 0; v < tree.n; ++v) {
    if (v == tree.root) continue;
    out << tree.parent[v] << ' ' << v << ' ' << tree.edge_length[v] / 2 << '\n';
  }
  if (with_weights) {
    out << "weights";
    for (NodeId v = 0; v < tree.n; ++v) out << ' ' << tree.weight[v];
    out << '\n';
  }
}

}  // namespace disperse
