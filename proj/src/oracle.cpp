#include "disperse/oracle.hpp"

#include <algorithm>

namespace disperse::oracle {

namespace {

std::vector<std::vector<std::pair<NodeId, Length>>> adjacency(const Tree& t) {
  std::vector<std::vector<std::pair<NodeId, Length>>> adj(t.n);
  for (NodeId v = 0; v < t.n; ++v) {
    if (v == t.root) continue;
    adj[v].push_back({t.parent[v], t.edge_length[v]});
    adj[t.parent[v]].push_back({v, t.edge_length[v]});
  }
  return adj;
}

void check_brute_size(const Tree& t) {
  if (t.n > kMaxBruteNodes)
    throw InputError("brute-force oracle limited to " + std::to_string(kMaxBruteNodes) +
                     " nodes, got " + std::to_string(t.n));
}

std::vector<NodeId> selectable_nodes(const Tree& t) {
  std::vector<NodeId> sel;
  for (NodeId v = 0; v < t.n; ++v)
    if (t.selectable[v]) sel.push_back(v);
  return sel;
}

}  // namespace

std::vector<Length> dists_from(const Tree& tree, NodeId s) {
  auto adj = adjacency(tree);
  std::vector<Length> d(tree.n, kNoDist);
  std::vector<NodeId> stack{s};
  d[s] = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (auto [w, len] : adj[v])
      if (d[w] == kNoDist) {
        d[w] = d[v] + len;
        stack.push_back(w);
      }
  }
  return d;
}

std::vector<std::vector<Length>> all_pairs(const Tree& tree) {
  std::vector<std::vector<Length>> d(tree.n);
  for (NodeId v = 0; v < tree.n; ++v) d[v] = dists_from(tree, v);
  return d;
}

Length diameter_double_sweep(const Tree& tree) {
  auto d0 = dists_from(tree, tree.root);
  NodeId a = static_cast<NodeId>(std::max_element(d0.begin(), d0.end()) - d0.begin());
  auto d1 = dists_from(tree, a);
  return *std::max_element(d1.begin(), d1.end());
}

OracleResult brute_search(const Tree& tree, Length lambda) {
  check_brute_size(tree);
  auto sel = selectable_nodes(tree);
  auto dist = all_pairs(tree);
  auto droot = dists_from(tree, tree.root);

  if (lambda == 0) {  // everything is compatible
    OracleResult r;
    r.witness = sel;
    r.best_value = sel.size();
    for (NodeId v : sel) r.witness_min_root_dist = std::min(r.witness_min_root_dist, droot[v]);
    return r;
  }

  OracleResult best;
  std::vector<NodeId> chosen;
  auto min_root = [&](const std::vector<NodeId>& p) {
    Length m = kNoDist;
    for (NodeId v : p) m = std::min(m, droot[v]);
    return m;
  };
  auto consider = [&]() {
    Length mr = min_root(chosen);
    bool better = chosen.size() > best.best_value ||
                  (chosen.size() == best.best_value && mr > best.witness_min_root_dist);
    if (better) {
      best.best_value = chosen.size();
      best.witness = chosen;
      best.witness_min_root_dist = mr;
    }
  };
  auto rec = [&](auto&& self, size_t i) -> void {
    if (chosen.size() + (sel.size() - i) < best.best_value) return;  // cannot beat best
    if (i == sel.size()) {
      consider();
      return;
    }
    NodeId v = sel[i];
    bool ok = true;
    for (NodeId u : chosen)
      if (dist[u][v] < lambda) {
        ok = false;
        break;
      }
    if (ok) {
      chosen.push_back(v);
      self(self, i + 1);
      chosen.pop_back();
    }
    self(self, i + 1);
  };
  rec(rec, 0);  // best starts as the empty set
  return best;
}

Length brute_optimize(const Tree& tree, uint64_t k) {
  check_brute_size(tree);
  auto sel = selectable_nodes(tree);
  if (k < 2 || k > sel.size()) throw InputError("brute_optimize: k out of range");
  auto prof = cardinality_profile(tree);
  return prof.best_f[k];
}

Weight brute_weighted(const Tree& tree, Length lambda, std::vector<NodeId>* witness) {
  check_brute_size(tree);
  auto sel = selectable_nodes(tree);
  auto dist = all_pairs(tree);
  Weight best = 0;
  std::vector<NodeId> best_set;
  std::vector<NodeId> chosen;
  Weight chosen_w = 0;
  std::vector<Weight> suffix(sel.size() + 1, 0);
  for (size_t i = sel.size(); i-- > 0;)
    suffix[i] = checked_add(suffix[i + 1], tree.weight[sel[i]]);
  auto rec = [&](auto&& self, size_t i) -> void {
    if (chosen_w + suffix[i] <= best) return;
    if (i == sel.size()) {
      if (chosen_w > best) {
        best = chosen_w;
        best_set = chosen;
      }
      return;
    }
    NodeId v = sel[i];
    bool ok = true;
    if (lambda > 0)
      for (NodeId u : chosen)
        if (dist[u][v] < lambda) {
          ok = false;
          break;
        }
    if (ok) {
      chosen.push_back(v);
      chosen_w += tree.weight[v];
      self(self, i + 1);
      chosen_w -= tree.weight[v];
      chosen.pop_back();
    }
    self(self, i + 1);
  };
  rec(rec, 0);
  if (witness) *witness = best_set;
  return best;
}

CardinalityProfile cardinality_profile(const Tree& tree) {
  check_brute_size(tree);
  auto sel = selectable_nodes(tree);
  auto dist = all_pairs(tree);
  CardinalityProfile prof;
  prof.best_f.assign(sel.size() + 1, 0);
  prof.best_f[0] = kNoDist;
  if (!sel.empty()) prof.best_f[1] = kNoDist;
  std::vector<NodeId> chosen;
  auto rec = [&](auto&& self, size_t i, Length f) -> void {
    if (i == sel.size()) return;
    // skip
    self(self, i + 1, f);
    // take sel[i]
    NodeId v = sel[i];
    Length nf = f;
    for (NodeId u : chosen) nf = std::min(nf, dist[u][v]);
    chosen.push_back(v);
    if (chosen.size() >= 2) prof.best_f[chosen.size()] = std::max(prof.best_f[chosen.size()], nf);
    self(self, i + 1, nf);
    chosen.pop_back();
  };
  rec(rec, 0, kNoDist);
  return prof;
}

uint64_t CardinalityProfile::count_at(Length lambda) const {
  uint64_t best = 0;
  for (uint64_t c = 0; c < best_f.size(); ++c)
    if (best_f[c] >= lambda) best = c;
  return best;
}

WeightProfile weight_profile(const Tree& tree) {
  check_brute_size(tree);
  auto sel = selectable_nodes(tree);
  auto dist = all_pairs(tree);
  std::vector<std::pair<Length, Weight>> all;
  all.reserve(size_t{1} << sel.size());
  std::vector<NodeId> chosen;
  auto rec = [&](auto&& self, size_t i, Length f, Weight w) -> void {
    if (i == sel.size()) {
      all.push_back({f, w});
      return;
    }
    self(self, i + 1, f, w);
    NodeId v = sel[i];
    Length nf = f;
    for (NodeId u : chosen) nf = std::min(nf, dist[u][v]);
    chosen.push_back(v);
    self(self, i + 1, nf, w + tree.weight[v]);
    chosen.pop_back();
  };
  rec(rec, 0, kNoDist, 0);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  WeightProfile prof;
  Weight run = 0;
  for (const auto& [f, w] : all) {
    run = std::max(run, w);
    if (prof.fw.empty() || prof.fw.back().first != f)
      prof.fw.push_back({f, run});
    else
      prof.fw.back().second = run;
  }
  return prof;
}

Weight WeightProfile::max_weight_at(Length lambda) const {
  // fw sorted by f descending with prefix-maxed weights
  size_t lo = 0, hi = fw.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (fw[mid].first >= lambda)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo == 0 ? 0 : fw[lo - 1].second;
}

}  // namespace disperse::oracle
