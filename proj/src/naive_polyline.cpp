#include "disperse/naive_polyline.hpp"

#include <algorithm>

namespace disperse {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw ContractViolation(msg);
}

}  // namespace

NaivePolyline NaivePolyline::from_breakpoints(Weight value_at_zero,
                                              const std::vector<Breakpoint>& sorted) {
  for (size_t j = 1; j < sorted.size(); ++j)
    require(sorted[j - 1].key < sorted[j].key, "from_breakpoints: keys not strictly increasing");
  NaivePolyline p(value_at_zero);
  p.bps_ = sorted;
  return p;
}

NaivePolyline NaivePolyline::split_off_greater(Length key) {
  auto it = std::upper_bound(bps_.begin(), bps_.end(), key,
                             [](Length k, const Breakpoint& b) { return k < b.key; });
  NaivePolyline right;
  right.bps_.assign(it, bps_.end());
  bps_.erase(it, bps_.end());
  right.vaz_ = bps_.empty() ? vaz_ : bps_.back().value;
  return right;
}

void NaivePolyline::join(NaivePolyline&& right) {
  if (right.bps_.empty()) return;
  if (!bps_.empty()) {
    require(bps_.back().key < right.bps_.front().key, "join: key order violated");
    require(bps_.back().value > right.bps_.front().value,
            "join: values not strictly decreasing");
  }
  bps_.insert(bps_.end(), right.bps_.begin(), right.bps_.end());
  right.bps_.clear();
}

Weight NaivePolyline::query(Length key) const {
  Weight v = vaz_;
  for (const auto& b : bps_) {
    if (b.key < key)
      v = b.value;
    else
      break;
  }
  return v;
}

IncreaseResult NaivePolyline::batched_interval_increase(
    const std::vector<IncreaseInterval>& batch) {
  IncreaseResult res;
  if (batch.empty()) return res;
  for (size_t j = 0; j < batch.size(); ++j) {
    const auto& iv = batch[j];
    require(!(!iv.lo && j > 0), "interval increase: unbounded lo must come first");
    require(!(!iv.hi && j + 1 < batch.size()), "interval increase: unbounded hi must come last");
    if (iv.lo && iv.hi) require(*iv.lo < *iv.hi, "interval increase: empty interval");
    if (j > 0)
      require(batch[j - 1].hi.has_value() && iv.lo.has_value() && *batch[j - 1].hi <= *iv.lo,
              "interval increase: intervals overlap or are unsorted");
  }

  auto find_ge = [&](Length k) {
    return std::lower_bound(bps_.begin(), bps_.end(), k,
                            [](const Breakpoint& b, Length key) { return b.key < key; });
  };

  for (const auto& iv : batch) {
    if (iv.lo) {
      auto it = find_ge(*iv.lo);
      bool existed = it != bps_.end() && it->key == *iv.lo;
      bool has_prev = it != bps_.begin();
      Weight prev_val = has_prev ? std::prev(it)->value : 0;
      Weight lo_old = existed ? it->value : (has_prev ? prev_val : vaz_);
      Weight lo_new = lo_old + iv.delta;
      if (has_prev && lo_new == prev_val) {
        if (existed) bps_.erase(it);
      } else {
        if (!existed) bps_.insert(it, {*iv.lo, lo_old});
        if (has_prev && lo_new > prev_val) {
          res.bumps.push_back({*iv.lo, lo_new});
          res.monotone = false;
        }
      }
    } else {
      vaz_ += iv.delta;
    }
    for (auto& b : bps_) {
      bool in = (!iv.lo || b.key >= *iv.lo) && (!iv.hi || b.key < *iv.hi);
      if (in) b.value += iv.delta;
    }
    if (iv.hi) {
      auto it = find_ge(*iv.hi);
      bool existed = it != bps_.end() && it->key == *iv.hi;
      bool has_prev = it != bps_.begin();
      Weight prev_val = has_prev ? std::prev(it)->value : 0;
      if (existed) {
        if (has_prev && it->value == prev_val) bps_.erase(it);
      } else {
        Weight hi_old;
        if (has_prev) {
          bool prev_raised = !iv.lo || std::prev(it)->key >= *iv.lo;
          hi_old = prev_raised ? prev_val - iv.delta : prev_val;
        } else {
          hi_old = vaz_ - iv.delta;
        }
        if (!(has_prev && hi_old == prev_val)) bps_.insert(it, {*iv.hi, hi_old});
      }
    }
  }
  return res;
}

std::vector<Polyline::PredAnswer> NaivePolyline::batched_value_predecessor(
    const std::vector<ValuePredQuery>& batch) const {
  std::vector<Polyline::PredAnswer> answers(batch.size());
  for (size_t j = 1; j < batch.size(); ++j)
    require(batch[j - 1].key <= batch[j].key, "value predecessor: batch not sorted by key");
  for (size_t qi = 0; qi < batch.size(); ++qi) {
    const auto& q = batch[qi];
    std::optional<size_t> best;
    for (size_t i = 0; i < bps_.size(); ++i)
      if (bps_[i].key < q.key && bps_[i].value >= q.value) best = i;
    if (best && q.stop_lo && bps_[*best].key <= *q.stop_lo) best.reset();
    if (best) {
      answers[qi].pred = bps_[*best];
      if (*best + 1 < bps_.size()) answers[qi].succ = bps_[*best + 1];
    } else if (!bps_.empty()) {
      answers[qi].succ = bps_.front();
    }
  }
  return answers;
}

void NaivePolyline::batched_interval_insert(const std::vector<InsertGroup>& groups) {
  if (groups.empty()) return;
  for (const auto& g : groups) {
    require(!g.items.empty(), "interval insert: empty group");
    for (size_t j = 1; j < g.items.size(); ++j) {
      require(g.items[j - 1].key < g.items[j].key, "interval insert: group keys not increasing");
      require(g.items[j - 1].value > g.items[j].value,
              "interval insert: group values not strictly decreasing");
    }
  }
  for (size_t j = 1; j < groups.size(); ++j)
    require(groups[j - 1].items.back().key < groups[j].items.front().key,
            "interval insert: groups not sorted");

  for (const auto& g : groups) {
    auto it = std::lower_bound(bps_.begin(), bps_.end(), g.items.front().key,
                               [](const Breakpoint& b, Length k) { return b.key < k; });
    bool has_prev = it != bps_.begin();
    if (has_prev) {
      require(std::prev(it)->value > g.items.front().value,
              "interval insert: breaks monotonicity against predecessor");
      require(std::prev(it)->key < g.items.front().key, "interval insert: key collision");
    } else {
      require(vaz_ >= g.items.front().value,
              "interval insert: value above value_at_zero at the front");
    }
    require(it == bps_.end() || it->key > g.items.back().key,
            "interval insert: group overlaps existing breakpoints");
    require(it == bps_.end() || it->value < g.items.back().value,
            "interval insert: breaks monotonicity against successor");
    bps_.insert(it, g.items.begin(), g.items.end());
  }
}

void NaivePolyline::batched_interval_delete(const std::vector<DeleteRange>& batch) {
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
  std::vector<Breakpoint> keep;
  keep.reserve(bps_.size());
  for (const auto& b : bps_) {
    bool inside = false;
    for (const auto& d : batch)
      if ((!d.lo || b.key > *d.lo) && (!d.hi || b.key < *d.hi)) inside = true;
    if (!inside) keep.push_back(b);
  }
  bps_ = std::move(keep);
}

std::vector<Weight> NaivePolyline::batched_query(const std::vector<Length>& keys) const {
  for (size_t j = 1; j < keys.size(); ++j)
    require(keys[j - 1] <= keys[j], "batched query: keys not sorted");
  std::vector<Weight> out;
  out.reserve(keys.size());
  for (Length k : keys) out.push_back(query(k));
  return out;
}

std::vector<Polyline::PredAnswer> NaivePolyline::batched_threshold_scan(
    const std::vector<Weight>& thresholds) const {
  for (size_t j = 1; j < thresholds.size(); ++j)
    require(thresholds[j - 1] > thresholds[j], "threshold scan: not strictly decreasing");
  std::vector<Polyline::PredAnswer> out(thresholds.size());
  for (size_t qi = 0; qi < thresholds.size(); ++qi) {
    std::optional<size_t> best;
    for (size_t i = 0; i < bps_.size(); ++i)
      if (bps_[i].value >= thresholds[qi]) best = i;
    if (best) {
      out[qi].pred = bps_[*best];
      if (*best + 1 < bps_.size()) out[qi].succ = bps_[*best + 1];
    } else if (!bps_.empty()) {
      out[qi].succ = bps_.front();
    }
  }
  return out;
}

void NaivePolyline::shift_keys(Length delta) {
  for (auto& b : bps_) b.key += delta;
}

void NaivePolyline::raise_values(Weight delta) {
  for (auto& b : bps_) b.value += delta;
}

std::optional<Breakpoint> NaivePolyline::front() const {
  if (bps_.empty()) return std::nullopt;
  return bps_.front();
}

std::optional<Breakpoint> NaivePolyline::back() const {
  if (bps_.empty()) return std::nullopt;
  return bps_.back();
}

void NaivePolyline::insert_breakpoint(Length key, Weight value) {
  auto it = std::lower_bound(bps_.begin(), bps_.end(), key,
                             [](const Breakpoint& b, Length k) { return b.key < k; });
  require(it == bps_.end() || it->key != key, "insert_breakpoint: key already present");
  bps_.insert(it, {key, value});
}

bool NaivePolyline::erase_breakpoint(Length key) {
  auto it = std::lower_bound(bps_.begin(), bps_.end(), key,
                             [](const Breakpoint& b, Length k) { return b.key < k; });
  if (it == bps_.end() || it->key != key) return false;
  bps_.erase(it);
  return true;
}

}  // namespace disperse
