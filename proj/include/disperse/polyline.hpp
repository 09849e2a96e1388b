#pragma once

#include <optional>
#include <vector>

#include "disperse/common.hpp"

namespace disperse {

struct Breakpoint {
  Length key = 0;
  Weight value = 0;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Raise the polyline values on the half-open interval (lo, hi] by delta.
/// A missing bound means the interval extends to -inf / +inf on that side.
/// A left-unbounded interval also raises value_at_zero.
struct IncreaseInterval {
  std::optional<Length> lo;
  std::optional<Length> hi;
  Weight delta = 0;
};

/// For key/value pair (key, value): find the breakpoint with the largest
/// key k' < key whose stored value is >= value. `stop_lo` bounds the search
/// from the left; a would-be answer with k' <= stop_lo is reported as none.
struct ValuePredQuery {
  Length key = 0;
  Weight value = 0;
  std::optional<Length> stop_lo;
};

/// Breakpoints to insert into one gap between two consecutive existing
/// breakpoints (or before the first / after the last one).
struct InsertGroup {
  std::vector<Breakpoint> items;  // sorted, strictly increasing keys
};

/// Delete all breakpoints with lo < key < hi (open interval, missing bound
/// means unbounded on that side).
struct DeleteRange {
  std::optional<Length> lo;
  std::optional<Length> hi;
};

struct IncreaseResult {
  bool monotone = true;  // false if some raised breakpoint now exceeds its predecessor
  // Left-endpoint breakpoints whose new value exceeds their predecessor's,
  // in key order. These are exactly the points where monotonicity broke.
  std::vector<Breakpoint> bumps;
};

/// A monotone step function over integer keys: value_at_zero is the value at
/// key 0, and the breakpoint with key a carries the value of the interval
/// (a, next key]. Keys are strictly increasing; in settled states values are
/// strictly decreasing (batched interval increases may transiently break
/// this, which the caller repairs).
///
/// Breakpoints live in the leaves of a height-balanced tree with split/join.
/// Every internal node carries lazy key/value offsets (the true key of a
/// leaf is the sum of its stored key and the offsets of all ancestors), plus
/// max-key, max-value and leaf-count aggregates. Whole-polyline shifts and
/// raises are O(1) root updates.
///
/// Batched operations split the tree into O(x) trees of O(y/x) leaves by
/// leaf-count median splits, work on the small trees, and rejoin them by the
/// mirrored recursion, touching O(x * (log2(2y/x) + 1)) nodes per batch.
/// Node touches are recorded in the attached TouchCounter; bulk deallocation
/// is not counted (it amortizes against node creation).
///
/// Single-owner mutable; distinct polylines may be used concurrently.
class Polyline {
 public:
  struct Node;  // balanced-tree node; opaque outside the implementation

  explicit Polyline(Weight value_at_zero = 0, TouchCounter* counter = nullptr)
      : vaz_(value_at_zero), counter_(counter) {}
  static Polyline from_breakpoints(Weight value_at_zero,
                                   const std::vector<Breakpoint>& sorted,
                                   TouchCounter* counter = nullptr);
  ~Polyline();
  Polyline(Polyline&& o) noexcept;
  Polyline& operator=(Polyline&& o) noexcept;
  Polyline(const Polyline&) = delete;
  Polyline& operator=(const Polyline&) = delete;

  Weight value_at_zero() const { return vaz_; }
  void set_value_at_zero(Weight w) { vaz_ = w; }
  uint64_t size() const;
  bool empty() const { return root_ == nullptr; }
  int height() const;
  TouchCounter* counter() const { return counter_; }
  void set_counter(TouchCounter* c) { counter_ = c; }

  /// Splits off and returns the part with keys > key; this polyline keeps
  /// keys <= key. The returned part's value_at_zero is the value this
  /// polyline takes at the split point.
  Polyline split_off_greater(Length key);

  /// Appends `right`: all keys of `right` must be greater than all keys
  /// here and the combined values must stay strictly decreasing, otherwise
  /// ContractViolation. `right` is consumed; its value_at_zero is dropped.
  void join(Polyline&& right);

  /// Value at `key`: value_at_zero for key 0 (or when no breakpoint has a
  /// smaller key), otherwise the value carried by the greatest breakpoint
  /// with key strictly below it.
  Weight query(Length key) const;

  std::vector<Breakpoint> to_sorted_list() const;

  /// Batched interval increase. Intervals must be sorted and disjoint.
  /// Endpoints are materialized as breakpoints when absent; a breakpoint
  /// whose new value equals its predecessor breakpoint's value is removed.
  IncreaseResult batched_interval_increase(const std::vector<IncreaseInterval>& batch);

  /// Batched value predecessor. Queries must be sorted by key; the caller
  /// guarantees the answer intervals are disjoint (prune the batch to
  /// monotonically decreasing values first). Each answer reports the found
  /// breakpoint and its successor breakpoint, when they exist.
  struct PredAnswer {
    std::optional<Breakpoint> pred;
    std::optional<Breakpoint> succ;  // successor of pred (first breakpoint when pred is none)
  };
  std::vector<PredAnswer> batched_value_predecessor(const std::vector<ValuePredQuery>& batch);

  /// Batched interval insertions. Groups must be sorted by key and each
  /// group must fall strictly between two consecutive existing breakpoints,
  /// keeping values strictly decreasing; ContractViolation otherwise.
  void batched_interval_insert(const std::vector<InsertGroup>& groups);

  /// Batched interval deletions over disjoint sorted open intervals.
  void batched_interval_delete(const std::vector<DeleteRange>& batch);

  /// Batched point queries (sorted keys); same cost discipline as the other
  /// batched operations (the tree is split and rejoined).
  std::vector<Weight> batched_query(const std::vector<Length>& keys);

  /// For each threshold w (strictly decreasing): the last breakpoint with
  /// value >= w and its successor. Drives intersection merging.
  std::vector<PredAnswer> batched_threshold_scan(const std::vector<Weight>& thresholds);

  /// O(1): adds delta to every breakpoint key.
  void shift_keys(Length delta);
  /// O(1): adds delta to every breakpoint value (not value_at_zero).
  void raise_values(Weight delta);

  std::optional<Breakpoint> front() const;
  std::optional<Breakpoint> back() const;
  void insert_breakpoint(Length key, Weight value);  // key must be absent
  bool erase_breakpoint(Length key);                 // returns false if absent

  /// Full-traversal structural check: strictly increasing keys, strictly
  /// decreasing values (unless allow_non_monotone), consistent aggregates,
  /// heights and counts. Throws ContractViolation on failure.
  void validate(bool allow_non_monotone = false) const;

 private:
  Node* root_ = nullptr;
  Weight vaz_ = 0;
  TouchCounter* counter_ = nullptr;
};

}  // namespace disperse
