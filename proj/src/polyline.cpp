#include "disperse/polyline.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <tuple>

namespace disperse {

struct Polyline::Node {
  Node* l = nullptr;
  Node* r = nullptr;
  int32_t h = 1;
  uint32_t cnt = 1;
  Length key = 0;  // leaf payload; unused on internal nodes
  Weight val = 0;
  Length dk = 0;  // pending add to every leaf key below (internal only)
  Weight dv = 0;
  Length maxk = 0;  // subtree aggregates, including this node's pending
  Weight maxv = 0;
  bool leaf() const { return l == nullptr; }
};

namespace {
using Node = Polyline::Node;
}

// All structural helpers. Node touches are counted once per push/descend
// step and once per allocation; bulk frees are not counted.
struct PolyOps {
  TouchCounter* ctr;

  void touch() const {
    if (ctr) ++ctr->touches;
  }

  static int32_t hh(const Node* t) { return t ? t->h : 0; }

  Node* leaf(Length k, Weight v) const {
    touch();
    Node* n = new Node;
    n->key = k;
    n->val = v;
    n->maxk = k;
    n->maxv = v;
    return n;
  }

  static void apply(Node* c, Length dk, Weight dv) {
    if (c->leaf()) {
      c->key += dk;
      c->val += dv;
    } else {
      c->dk += dk;
      c->dv += dv;
    }
    c->maxk += dk;
    c->maxv += dv;
  }

  void push(Node* n) const {
    touch();
    if (!n->leaf() && (n->dk || n->dv)) {
      apply(n->l, n->dk, n->dv);
      apply(n->r, n->dk, n->dv);
      n->dk = 0;
      n->dv = 0;
    }
  }

  static void pull(Node* n) {  // n internal with cleared pending
    n->h = 1 + std::max(hh(n->l), hh(n->r));
    n->cnt = n->l->cnt + n->r->cnt;
    n->maxk = std::max(n->l->maxk, n->r->maxk);
    n->maxv = std::max(n->l->maxv, n->r->maxv);
  }

  Node* mk(Node* a, Node* b) const {
    touch();
    Node* n = new Node;
    n->l = a;
    n->r = b;
    pull(n);
    return n;
  }

  Node* rot_left(Node* n) const {  // n and n->r pushed
    Node* r = n->r;
    n->r = r->l;
    pull(n);
    r->l = n;
    pull(r);
    return r;
  }

  Node* rot_right(Node* n) const {
    Node* l = n->l;
    n->l = l->r;
    pull(n);
    l->r = n;
    pull(l);
    return l;
  }

  Node* rebalance(Node* n) const {  // n pushed; child heights differ by <= 2
    int32_t bf = hh(n->r) - hh(n->l);
    if (bf > 1) {
      push(n->r);
      if (hh(n->r->l) > hh(n->r->r)) {
        push(n->r->l);
        n->r = rot_right(n->r);
      }
      return rot_left(n);
    }
    if (bf < -1) {
      push(n->l);
      if (hh(n->l->r) > hh(n->l->l)) {
        push(n->l->r);
        n->l = rot_left(n->l);
      }
      return rot_right(n);
    }
    pull(n);
    return n;
  }

  Node* join(Node* a, Node* b) const {
    if (!a) return b;
    if (!b) return a;
    if (std::abs(hh(a) - hh(b)) <= 1) return mk(a, b);
    if (hh(a) > hh(b)) {
      push(a);
      a->r = join(a->r, b);
      return rebalance(a);
    }
    push(b);
    b->l = join(a, b->l);
    return rebalance(b);
  }

  // left part: keys <= key (or < key when strict)
  std::pair<Node*, Node*> split_le(Node* t, Length key, bool strict = false) const {
    if (!t) return {nullptr, nullptr};
    if (t->leaf()) {
      touch();
      bool goes_left = strict ? t->key < key : t->key <= key;
      if (goes_left) return {t, nullptr};
      return {nullptr, t};
    }
    push(t);
    Node* l = t->l;
    Node* r = t->r;
    delete t;
    bool left_all = strict ? l->maxk < key : l->maxk <= key;
    if (left_all) {
      auto [m, rr] = split_le(r, key, strict);
      return {join(l, m), rr};
    }
    auto [ll, m] = split_le(l, key, strict);
    return {ll, join(m, r)};
  }

  std::pair<Node*, Node*> split_cnt(Node* t, uint32_t c) const {  // first c leaves
    if (!t || c == 0) return {nullptr, t};
    if (c >= t->cnt) return {t, nullptr};
    push(t);
    Node* l = t->l;
    Node* r = t->r;
    delete t;
    if (c == l->cnt) return {l, r};
    if (c < l->cnt) {
      auto [a, b] = split_cnt(l, c);
      return {a, join(b, r)};
    }
    auto [a, b] = split_cnt(r, c - l->cnt);
    return {join(l, a), b};
  }

  static void free_tree(Node* t) {
    if (!t) return;
    free_tree(t->l);
    free_tree(t->r);
    delete t;
  }

  Breakpoint leftmost(const Node* t) const {
    Length dk = 0;
    Weight dv = 0;
    while (!t->leaf()) {
      touch();
      dk += t->dk;
      dv += t->dv;
      t = t->l;
    }
    touch();
    return {t->key + dk, t->val + dv};
  }

  Breakpoint rightmost(const Node* t) const {
    Length dk = 0;
    Weight dv = 0;
    while (!t->leaf()) {
      touch();
      dk += t->dk;
      dv += t->dv;
      t = t->r;
    }
    touch();
    return {t->key + dk, t->val + dv};
  }

  // greatest breakpoint with key < q
  std::optional<Breakpoint> pred_bp(const Node* t, Length q) const {
    if (!t) return std::nullopt;
    const Node* fallback = nullptr;  // subtree entirely < q
    Length fk = 0;
    Weight fv = 0;
    Length dk = 0;
    Weight dv = 0;
    while (!t->leaf()) {
      touch();
      dk += t->dk;
      dv += t->dv;
      if (t->l->maxk + dk < q) {
        fallback = t->l;
        fk = dk;
        fv = dv;
        t = t->r;
      } else {
        t = t->l;
      }
    }
    touch();
    if (t->key + dk < q) return Breakpoint{t->key + dk, t->val + dv};
    if (!fallback) return std::nullopt;
    const Node* u = fallback;
    while (!u->leaf()) {
      touch();
      fk += u->dk;
      fv += u->dv;
      u = u->r;
    }
    touch();
    return Breakpoint{u->key + fk, u->val + fv};
  }

  // rightmost leaf with key < k and value >= v
  std::optional<Breakpoint> value_pred_in_tree(const Node* t, Length k, Weight v) const {
    if (!t || t->maxv < v) return std::nullopt;
    std::vector<std::tuple<const Node*, Length, Weight>> hang;
    Length dk = 0;
    Weight dv = 0;
    const Node* cur = t;
    while (!cur->leaf()) {
      touch();
      dk += cur->dk;
      dv += cur->dv;
      if (cur->l->maxk + dk < k) {
        hang.push_back({cur->l, dk, dv});
        cur = cur->r;
      } else {
        cur = cur->l;
      }
    }
    touch();
    if (cur->key + dk < k && cur->val + dv >= v) return Breakpoint{cur->key + dk, cur->val + dv};
    for (auto it = hang.rbegin(); it != hang.rend(); ++it) {
      auto [n, hk, hv] = *it;
      if (n->maxv + hv < v) continue;
      while (!n->leaf()) {
        touch();
        hk += n->dk;
        hv += n->dv;
        n = (n->r->maxv + hv >= v) ? n->r : n->l;
      }
      touch();
      return Breakpoint{n->key + hk, n->val + hv};
    }
    return std::nullopt;
  }

  // rightmost leaf with value >= v, plus its in-tree successor if any
  std::pair<Breakpoint, std::optional<Breakpoint>> value_floor_in_tree(const Node* t,
                                                                       Weight v) const {
    const Node* succ = nullptr;
    Length sk = 0;
    Weight sv = 0;
    Length dk = 0;
    Weight dv = 0;
    while (!t->leaf()) {
      touch();
      dk += t->dk;
      dv += t->dv;
      if (t->r->maxv + dv >= v) {
        t = t->r;
      } else {
        succ = t->r;
        sk = dk;
        sv = dv;
        t = t->l;
      }
    }
    touch();
    std::optional<Breakpoint> s;
    if (succ) {
      const Node* u = succ;
      while (!u->leaf()) {
        touch();
        sk += u->dk;
        sv += u->dv;
        u = u->l;
      }
      touch();
      s = Breakpoint{u->key + sk, u->val + sv};
    }
    return {Breakpoint{t->key + dk, t->val + dv}, s};
  }

  void collect(const Node* t, Length dk, Weight dv, std::vector<Breakpoint>& out) const {
    if (t->leaf()) {
      out.push_back({t->key + dk, t->val + dv});
      return;
    }
    collect(t->l, dk + t->dk, dv + t->dv, out);
    collect(t->r, dk + t->dk, dv + t->dv, out);
  }

  Node* build_range(const std::vector<Breakpoint>& v, size_t lo, size_t hi) const {
    if (lo >= hi) return nullptr;
    if (hi - lo == 1) return leaf(v[lo].key, v[lo].value);
    size_t mid = lo + (hi - lo) / 2;
    return mk(build_range(v, lo, mid), build_range(v, mid, hi));
  }

  void split_to_small(Node* t, uint32_t target, std::vector<Node*>& out) const {
    if (!t) return;
    if (t->cnt <= target) {
      out.push_back(t);
      return;
    }
    auto [a, b] = split_cnt(t, t->cnt / 2);
    split_to_small(a, target, out);
    split_to_small(b, target, out);
  }

  Node* join_range(std::vector<Node*>& v, size_t lo, size_t hi) const {
    if (lo >= hi) return nullptr;
    if (hi - lo == 1) return v[lo];
    size_t mid = lo + (hi - lo) / 2;
    Node* a = join_range(v, lo, mid);
    Node* b = join_range(v, mid, hi);
    return join(a, b);
  }
};

// Left-to-right sweep over the small trees of one batched operation.
// Invariant: every key in `out` < every key in `cur` < every key in the
// unconsumed input trees.
struct Sweep {
  const PolyOps& ops;
  std::vector<Node*> in;
  size_t i = 0;
  Node* cur = nullptr;
  std::vector<Node*> out;

  Sweep(const PolyOps& o, std::vector<Node*> trees) : ops(o), in(std::move(trees)) {}

  void refill() {
    while (!cur && i < in.size()) cur = in[i++];
  }

  // Moves every key < k (<= k when `le`) to `out`, adding `delta` to the
  // values of everything moved. Whole-tree moves are O(1) root updates.
  void advance(Length k, bool le, Weight delta) {
    for (;;) {
      refill();
      if (!cur) return;
      bool whole = le ? cur->maxk <= k : cur->maxk < k;
      if (whole) {
        if (delta) PolyOps::apply(cur, 0, delta);
        out.push_back(cur);
        cur = nullptr;
        continue;
      }
      auto [a, b] = ops.split_le(cur, k, /*strict=*/!le);
      if (a) {
        if (delta) PolyOps::apply(a, 0, delta);
        out.push_back(a);
      }
      cur = b;
      return;
    }
  }

  void advance_to_end(Weight delta) {
    for (;;) {
      refill();
      if (!cur) return;
      if (delta) PolyOps::apply(cur, 0, delta);
      out.push_back(cur);
      cur = nullptr;
    }
  }

  // Drops (frees) every key < k; with unbounded = true drops everything.
  void drop(Length k, bool unbounded) {
    for (;;) {
      refill();
      if (!cur) return;
      if (unbounded || cur->maxk < k) {
        PolyOps::free_tree(cur);
        cur = nullptr;
        continue;
      }
      auto [a, b] = ops.split_le(cur, k, /*strict=*/true);
      PolyOps::free_tree(a);
      cur = b;
      return;
    }
  }

  std::optional<Breakpoint> peek_prev() {
    if (out.empty()) return std::nullopt;
    return ops.rightmost(out.back());
  }

  std::optional<Breakpoint> peek_next() {
    refill();
    if (cur) return ops.leftmost(cur);
    return std::nullopt;
  }

  // Emits a fresh breakpoint at the current position (all keys < key are in
  // `out`, all keys in `cur`/input are > key).
  void emit(Length key, Weight value) { out.push_back(ops.leaf(key, value)); }

  // Removes the leaf at the front of `cur`; the caller checked it is at
  // `key` via peek_next.
  void erase_next(Length key) {
    auto [a, b] = ops.split_le(cur, key);
    PolyOps::free_tree(a);  // exactly the one leaf
    cur = b;
  }

  Node* finish() {
    advance_to_end(0);
    return ops.join_range(out, 0, out.size());
  }
};

// ---------------------------------------------------------------------------

Polyline::~Polyline() { PolyOps::free_tree(root_); }

Polyline::Polyline(Polyline&& o) noexcept
    : root_(o.root_), vaz_(o.vaz_), counter_(o.counter_) {
  o.root_ = nullptr;
}

Polyline& Polyline::operator=(Polyline&& o) noexcept {
  if (this != &o) {
    PolyOps::free_tree(root_);
    root_ = o.root_;
    vaz_ = o.vaz_;
    counter_ = o.counter_;
    o.root_ = nullptr;
  }
  return *this;
}

Polyline Polyline::from_breakpoints(Weight value_at_zero, const std::vector<Breakpoint>& sorted,
                                    TouchCounter* counter) {
  for (size_t j = 1; j < sorted.size(); ++j)
    if (sorted[j - 1].key >= sorted[j].key)
      throw ContractViolation("from_breakpoints: keys not strictly increasing");
  Polyline p(value_at_zero, counter);
  PolyOps ops{counter};
  p.root_ = ops.build_range(sorted, 0, sorted.size());
  return p;
}

uint64_t Polyline::size() const { return root_ ? root_->cnt : 0; }

int Polyline::height() const { return root_ ? root_->h : 0; }

Polyline Polyline::split_off_greater(Length key) {
  PolyOps ops{counter_};
  auto [l, r] = ops.split_le(root_, key);
  root_ = l;
  Polyline right(0, counter_);
  right.root_ = r;
  right.vaz_ = root_ ? ops.rightmost(root_).value : vaz_;
  return right;
}

void Polyline::join(Polyline&& right) {
  PolyOps ops{counter_};
  if (right.root_) {
    if (root_) {
      Breakpoint a = ops.rightmost(root_);
      Breakpoint b = ops.leftmost(right.root_);
      if (a.key >= b.key) throw ContractViolation("join: key order violated");
      if (a.value <= b.value) throw ContractViolation("join: values not strictly decreasing");
    }
    root_ = ops.join(root_, right.root_);
    right.root_ = nullptr;
  }
}

Weight Polyline::query(Length key) const {
  PolyOps ops{counter_};
  auto p = ops.pred_bp(root_, key);
  return p ? p->value : vaz_;
}

std::vector<Breakpoint> Polyline::to_sorted_list() const {
  std::vector<Breakpoint> out;
  if (root_) {
    out.reserve(root_->cnt);
    PolyOps ops{counter_};
    ops.collect(root_, 0, 0, out);
  }
  return out;
}

void Polyline::shift_keys(Length delta) {
  if (root_ && delta) PolyOps::apply(root_, delta, 0);
}

void Polyline::raise_values(Weight delta) {
  if (root_ && delta) PolyOps::apply(root_, 0, delta);
}

std::optional<Breakpoint> Polyline::front() const {
  if (!root_) return std::nullopt;
  PolyOps ops{counter_};
  return ops.leftmost(root_);
}

std::optional<Breakpoint> Polyline::back() const {
  if (!root_) return std::nullopt;
  PolyOps ops{counter_};
  return ops.rightmost(root_);
}

void Polyline::insert_breakpoint(Length key, Weight value) {
  PolyOps ops{counter_};
  auto [l, r] = ops.split_le(root_, key, /*strict=*/true);
  if (r) {
    Breakpoint first = ops.leftmost(r);
    if (first.key == key) throw ContractViolation("insert_breakpoint: key already present");
  }
  root_ = ops.join(ops.join(l, ops.leaf(key, value)), r);
}

bool Polyline::erase_breakpoint(Length key) {
  PolyOps ops{counter_};
  auto [l, r] = ops.split_le(root_, key, /*strict=*/true);
  bool found = false;
  if (r) {
    Breakpoint first = ops.leftmost(r);
    if (first.key == key) {
      auto [one, rest] = ops.split_le(r, key);
      PolyOps::free_tree(one);
      r = rest;
      found = true;
    }
  }
  root_ = ops.join(l, r);
  return found;
}

namespace {

uint32_t small_tree_target(uint64_t y, uint64_t x) {
  if (x == 0) return 1;
  uint64_t t = (y + x - 1) / x;
  return static_cast<uint32_t>(std::max<uint64_t>(1, t));
}

void require(bool cond, const char* msg) {
  if (!cond) throw ContractViolation(msg);
}

}  // namespace

IncreaseResult Polyline::batched_interval_increase(const std::vector<IncreaseInterval>& batch) {
  IncreaseResult res;
  if (batch.empty()) return res;
  for (size_t j = 0; j < batch.size(); ++j) {
    const auto& iv = batch[j];
    require(!(!iv.lo && j > 0), "interval increase: unbounded lo must come first");
    require(!(!iv.hi && j + 1 < batch.size()), "interval increase: unbounded hi must come last");
    if (iv.lo && iv.hi) require(*iv.lo < *iv.hi, "interval increase: empty interval");
    if (j > 0) {
      require(batch[j - 1].hi.has_value() && iv.lo.has_value() &&
                  *batch[j - 1].hi <= *iv.lo,
              "interval increase: intervals overlap or are unsorted");
    }
  }

  PolyOps ops{counter_};
  std::vector<Node*> trees;
  ops.split_to_small(root_, small_tree_target(size(), batch.size()), trees);
  root_ = nullptr;
  Sweep sw(ops, std::move(trees));

  for (const auto& iv : batch) {
    if (iv.lo) {
      sw.advance(*iv.lo, /*le=*/false, 0);
      auto prev = sw.peek_prev();
      auto next = sw.peek_next();
      bool existed = next && next->key == *iv.lo;
      Weight lo_old = existed ? next->value : (prev ? prev->value : vaz_);
      Weight lo_new = lo_old + iv.delta;
      if (prev && lo_new == prev->value) {
        // new value equal to the predecessor breakpoint: drop the endpoint
        if (existed) sw.erase_next(*iv.lo);
      } else {
        if (!existed) sw.emit(*iv.lo, lo_old);
        if (prev && lo_new > prev->value) {
          res.bumps.push_back({*iv.lo, lo_new});
          res.monotone = false;
        }
      }
    } else {
      vaz_ += iv.delta;
    }
    // raise values on [lo, hi); the lo endpoint travels with the range
    if (iv.hi) {
      sw.advance(*iv.hi, /*le=*/false, iv.delta);
      auto prev = sw.peek_prev();
      auto next = sw.peek_next();
      bool existed = next && next->key == *iv.hi;
      if (existed) {
        if (prev && next->value == prev->value) sw.erase_next(*iv.hi);
      } else {
        // pre-raise value of the zone right of hi
        Weight hi_old;
        if (prev) {
          bool prev_raised = !iv.lo || prev->key >= *iv.lo;
          hi_old = prev_raised ? prev->value - iv.delta : prev->value;
        } else {
          // nothing before hi at all; only possible with unbounded lo
          hi_old = vaz_ - iv.delta;
        }
        if (!(prev && hi_old == prev->value)) sw.emit(*iv.hi, hi_old);
      }
    } else {
      sw.advance_to_end(iv.delta);
    }
  }
  root_ = sw.finish();
  return res;
}

namespace {

// leftmost breakpoint with key > `key`, starting in trees[tree_idx]
std::optional<Breakpoint> successor_in_forest(const PolyOps& ops,
                                              const std::vector<Node*>& trees, size_t tree_idx,
                                              Length key) {
  for (size_t t = tree_idx; t < trees.size(); ++t) {
    if (!trees[t] || trees[t]->maxk <= key) continue;
    const Node* n = trees[t];
    Length dk = 0;
    Weight dv = 0;
    while (!n->leaf()) {
      ops.touch();
      dk += n->dk;
      dv += n->dv;
      n = (n->l->maxk + dk > key) ? n->l : n->r;
    }
    ops.touch();
    if (n->key + dk > key) return Breakpoint{n->key + dk, n->val + dv};
    return std::nullopt;  // cannot happen: maxk > key guarantees a hit
  }
  return std::nullopt;
}

}  // namespace

std::vector<Polyline::PredAnswer> Polyline::batched_value_predecessor(
    const std::vector<ValuePredQuery>& batch) {
  std::vector<PredAnswer> answers(batch.size());
  if (batch.empty()) return answers;
  for (size_t j = 1; j < batch.size(); ++j)
    require(batch[j - 1].key <= batch[j].key, "value predecessor: batch not sorted by key");

  PolyOps ops{counter_};
  std::vector<Node*> trees;
  ops.split_to_small(root_, small_tree_target(size(), batch.size()), trees);
  root_ = nullptr;

  // Right-to-left over queries. Keys descend and values ascend (the caller
  // prunes to monotonically decreasing values), so a tree that fails once
  // fails for every later query and the scan pointer only moves left.
  size_t strad = trees.empty() ? 0 : trees.size() - 1;
  size_t scan = trees.size();  // one past the highest index still viable
  for (size_t qi = batch.size(); qi-- > 0;) {
    const auto& q = batch[qi];
    if (trees.empty()) continue;
    while (strad > 0 && trees[strad - 1]->maxk >= q.key) --strad;
    size_t t = std::min(scan, strad + 1);
    while (t-- > 0) {
      if (q.stop_lo && trees[t]->maxk <= *q.stop_lo) break;
      if (trees[t]->maxv >= q.value) {
        auto hit = ops.value_pred_in_tree(trees[t], q.key, q.value);
        if (hit) {
          if (!q.stop_lo || hit->key > *q.stop_lo) {
            answers[qi].pred = hit;
            answers[qi].succ = successor_in_forest(ops, trees, t, hit->key);
          }
          scan = t + 1;
          break;
        }
      }
      scan = t;  // permanently skipped
    }
    if (!answers[qi].pred && !trees.empty()) answers[qi].succ = ops.leftmost(trees.front());
  }

  root_ = ops.join_range(trees, 0, trees.size());
  return answers;
}

void Polyline::batched_interval_insert(const std::vector<InsertGroup>& groups) {
  if (groups.empty()) return;
  size_t total = 0;
  for (const auto& g : groups) {
    require(!g.items.empty(), "interval insert: empty group");
    for (size_t j = 1; j < g.items.size(); ++j) {
      require(g.items[j - 1].key < g.items[j].key, "interval insert: group keys not increasing");
      require(g.items[j - 1].value > g.items[j].value,
              "interval insert: group values not strictly decreasing");
    }
    total += g.items.size();
  }
  for (size_t j = 1; j < groups.size(); ++j)
    require(groups[j - 1].items.back().key < groups[j].items.front().key,
            "interval insert: groups not sorted");

  PolyOps ops{counter_};
  std::vector<Node*> trees;
  ops.split_to_small(root_, small_tree_target(size(), groups.size() + total), trees);
  root_ = nullptr;
  Sweep sw(ops, std::move(trees));

  for (const auto& g : groups) {
    sw.advance(g.items.front().key, /*le=*/false, 0);
    auto prev = sw.peek_prev();
    auto next = sw.peek_next();
    if (prev) {
      require(prev->value > g.items.front().value,
              "interval insert: breaks monotonicity against predecessor");
    } else {
      require(vaz_ >= g.items.front().value,
              "interval insert: value above value_at_zero at the front");
    }
    require(!next || next->key > g.items.back().key,
            "interval insert: group overlaps existing breakpoints");
    require(!next || next->value < g.items.back().value,
            "interval insert: breaks monotonicity against successor");
    require(!prev || prev->key < g.items.front().key, "interval insert: key collision");
    Node* built = ops.build_range(g.items, 0, g.items.size());
    sw.out.push_back(built);
  }
  root_ = sw.finish();
}

void Polyline::batched_interval_delete(const std::vector<DeleteRange>& batch) {
  if (batch.empty()) return;
  for (size_t j = 0; j < batch.size(); ++j) {
    const auto& d = batch[j];
    require(!(!d.lo && j > 0), "interval delete: unbounded lo must come first");
    require(!(!d.hi && j + 1 < batch.size()), "interval delete: unbounded hi must come last");
    if (d.lo && d.hi) require(*d.lo < *d.hi, "interval delete: malformed interval");
    if (j > 0)
      require(batch[j - 1].hi.has_value() && batch[j].lo.has_value() &&
                  *batch[j - 1].hi <= *batch[j].lo,
              "interval delete: intervals overlap or are unsorted");
  }

  PolyOps ops{counter_};
  std::vector<Node*> trees;
  ops.split_to_small(root_, small_tree_target(size(), batch.size()), trees);
  root_ = nullptr;
  Sweep sw(ops, std::move(trees));
  for (const auto& d : batch) {
    if (d.lo) sw.advance(*d.lo, /*le=*/true, 0);
    if (d.hi) {
      sw.drop(*d.hi, /*unbounded=*/false);
    } else {
      sw.drop(0, /*unbounded=*/true);
    }
  }
  root_ = sw.finish();
}

std::vector<Weight> Polyline::batched_query(const std::vector<Length>& keys) {
  std::vector<Weight> out(keys.size(), vaz_);
  if (keys.empty()) return out;
  for (size_t j = 1; j < keys.size(); ++j)
    require(keys[j - 1] <= keys[j], "batched query: keys not sorted");

  PolyOps ops{counter_};
  std::vector<Node*> trees;
  ops.split_to_small(root_, small_tree_target(size(), keys.size()), trees);
  root_ = nullptr;

  size_t j = 0;                      // first tree with maxk >= key
  std::optional<size_t> last_left;   // last tree fully to the left
  for (size_t qi = 0; qi < keys.size(); ++qi) {
    Length k = keys[qi];
    while (j < trees.size() && trees[j]->maxk < k) {
      last_left = j;
      ++j;
    }
    std::optional<Breakpoint> p;
    if (j < trees.size()) p = ops.pred_bp(trees[j], k);
    if (!p && last_left) p = ops.rightmost(trees[*last_left]);
    if (p) out[qi] = p->value;
  }
  root_ = ops.join_range(trees, 0, trees.size());
  return out;
}

std::vector<Polyline::PredAnswer> Polyline::batched_threshold_scan(
    const std::vector<Weight>& thresholds) {
  std::vector<PredAnswer> out(thresholds.size());
  if (thresholds.empty()) return out;
  for (size_t j = 1; j < thresholds.size(); ++j)
    require(thresholds[j - 1] > thresholds[j], "threshold scan: not strictly decreasing");

  PolyOps ops{counter_};
  std::vector<Node*> trees;
  ops.split_to_small(root_, small_tree_target(size(), thresholds.size()), trees);
  root_ = nullptr;

  size_t j = 0;
  for (size_t qi = 0; qi < thresholds.size(); ++qi) {
    Weight w = thresholds[qi];
    if (trees.empty()) break;
    while (j + 1 < trees.size() && trees[j + 1]->maxv >= w) ++j;
    if (trees[j]->maxv < w) {
      // no breakpoint has value >= w; successor is the global first
      out[qi].succ = ops.leftmost(trees.front());
      continue;
    }
    auto [floor_bp, succ] = ops.value_floor_in_tree(trees[j], w);
    out[qi].pred = floor_bp;
    if (!succ && j + 1 < trees.size()) succ = ops.leftmost(trees[j + 1]);
    out[qi].succ = succ;
  }
  root_ = ops.join_range(trees, 0, trees.size());
  return out;
}

namespace {

struct ValidateState {
  bool has_prev = false;
  Breakpoint prev;
};

void validate_rec(const Node* t, Length dk, Weight dv, bool allow_non_monotone,
                  ValidateState& st) {
  if (t->leaf()) {
    Breakpoint bp{t->key + dk, t->val + dv};
    if (st.has_prev) {
      if (st.prev.key >= bp.key) throw ContractViolation("validate: keys not strictly increasing");
      if (!allow_non_monotone && st.prev.value <= bp.value)
        throw ContractViolation("validate: values not strictly decreasing");
    }
    st.prev = bp;
    st.has_prev = true;
    return;
  }
  if (!t->l || !t->r) throw ContractViolation("validate: internal node without two children");
  if (t->h != 1 + std::max(t->l->h, t->r->h)) throw ContractViolation("validate: bad height");
  if (std::abs(t->l->h - t->r->h) > 1) throw ContractViolation("validate: AVL balance violated");
  if (t->cnt != t->l->cnt + t->r->cnt) throw ContractViolation("validate: bad leaf count");
  if (t->maxk != std::max(t->l->maxk, t->r->maxk) + t->dk)
    throw ContractViolation("validate: bad max-key aggregate");
  if (t->maxv != std::max(t->l->maxv, t->r->maxv) + t->dv)
    throw ContractViolation("validate: bad max-value aggregate");
  validate_rec(t->l, dk + t->dk, dv + t->dv, allow_non_monotone, st);
  validate_rec(t->r, dk + t->dk, dv + t->dv, allow_non_monotone, st);
}

}  // namespace

void Polyline::validate(bool allow_non_monotone) const {
  if (!root_) return;
  ValidateState st;
  validate_rec(root_, 0, 0, allow_non_monotone, st);
}

}  // namespace disperse
