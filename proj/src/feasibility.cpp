#include "disperse/feasibility.hpp"

#include <algorithm>

namespace disperse {

namespace {

// Per-subtree state. Members are kept in an O(1)-concat linked list that
// never contains the current candidate, so dropping a displaced candidate
// costs nothing.
struct State {
  uint64_t count = 0;
  NodeId cand = kNoNode;
  Length cand_dist = 0;
  NodeId cert = kNoNode;
  Length cert_dist = 0;
  int32_t head = -1;
  int32_t tail = -1;
};

}  // namespace

Solution feasibility_test(const Tree& tree, const DistIndex& index, Length lambda,
                          bool collect_members) {
  const int32_t n = tree.n;
  std::vector<State> st(n);
  std::vector<int32_t> next_member;
  if (collect_members) next_member.assign(n, -1);
  uint64_t visits = 0;

  auto concat = [&](State& a, const State& b) {
    if (!collect_members) return;
    if (b.head == -1) return;
    if (a.head == -1) {
      a.head = b.head;
      a.tail = b.tail;
    } else {
      next_member[a.tail] = b.head;
      a.tail = b.tail;
    }
  };
  auto append = [&](State& a, NodeId v) {
    if (!collect_members) return;
    if (a.head == -1) {
      a.head = a.tail = v;
    } else {
      next_member[a.tail] = v;
      a.tail = v;
    }
  };

  auto order = tree.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId r = *it;
    State s;
    visits += 1 + tree.children[r].size();

    // steps 1-2: merge child solutions; promote candidates that are now
    // certain w.r.t. r; track x = nearest taken node
    NodeId x = kNoNode;
    Length x_dist = kNoDist;
    for (NodeId c : tree.children[r]) {
      State& cs = st[c];
      const Length w = tree.edge_length[c];
      s.count += cs.count;
      concat(s, cs);
      if (cs.cert != kNoNode) {
        Length d = cs.cert_dist + w;
        if (d < x_dist) {
          x = cs.cert;
          x_dist = d;
        }
      }
      if (cs.cand != kNoNode) {
        Length d = cs.cand_dist + w;
        if (2 * d >= lambda) {  // certain w.r.t. r: keep it
          append(s, cs.cand);
          if (d < x_dist) {
            x = cs.cand;
            x_dist = d;
          }
        }
        // otherwise it stays a candidate, handled in step 3
      }
    }

    // step 3: farthest still-candidate child node that fits
    NodeId take = kNoNode;
    Length take_dist = 0;
    for (NodeId c : tree.children[r]) {
      State& cs = st[c];
      if (cs.cand == kNoNode) continue;
      Length d = cs.cand_dist + tree.edge_length[c];
      if (2 * d >= lambda) continue;  // promoted above
      if (take == kNoNode || d > take_dist || (d == take_dist && cs.cand < take)) {
        take = cs.cand;
        take_dist = d;
      }
    }
    if (take != kNoNode) {
      bool fits = x == kNoNode || index.dist(take, x) >= lambda;
      if (!fits) take = kNoNode;
    }
    // candidates that were neither promoted nor taken are displaced; their
    // counts were included in cs.count, subtract them now
    for (NodeId c : tree.children[r]) {
      State& cs = st[c];
      if (cs.cand == kNoNode) continue;
      Length d = cs.cand_dist + tree.edge_length[c];
      if (2 * d >= lambda) continue;
      if (cs.cand != take) s.count -= 1;
    }

    s.cert = x;
    s.cert_dist = x_dist;
    if (take != kNoNode) {
      s.cand = take;
      s.cand_dist = take_dist;
    }

    // step 4: add r itself when everything chosen so far is far enough
    if (tree.selectable[r]) {
      Length closest = take != kNoNode ? take_dist : x_dist;
      if (closest >= lambda) {  // kNoDist when nothing chosen
        s.count += 1;
        if (lambda > 0) {
          s.cand = r;
          s.cand_dist = 0;
        } else {
          append(s, r);
          s.cert = r;
          s.cert_dist = 0;
        }
      }
    }
    st[r] = s;
  }

  const State& rs = st[tree.root];
  Solution sol;
  sol.count = rs.count;
  if (rs.cand != kNoNode) sol.candidate = {rs.cand, rs.cand_dist};
  if (rs.cert != kNoNode) sol.certain_nearest = {rs.cert, rs.cert_dist};
  sol.nearest_dist = rs.cand != kNoNode ? rs.cand_dist : rs.cert_dist;
  if (rs.cand == kNoNode && rs.cert == kNoNode) sol.nearest_dist = kNoDist;
  sol.visits = visits;
  if (collect_members) {
    for (int32_t v = rs.head; v != -1; v = next_member[v]) sol.members.push_back(v);
    if (rs.cand != kNoNode) sol.members.push_back(rs.cand);
  }
  return sol;
}

bool is_feasible(const Tree& tree, const DistIndex& index, uint64_t k, Length lambda) {
  if (k == 0) throw InputError("is_feasible: k must be at least 1");
  return feasibility_test(tree, index, lambda).count >= k;
}

}  // namespace disperse
