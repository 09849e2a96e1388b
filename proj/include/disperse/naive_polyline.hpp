#pragma once

#include <vector>

#include "disperse/polyline.hpp"

namespace disperse {

/// Reference implementation of the polyline contracts on a plain sorted
/// vector, every operation a linear scan. Differential oracle for Polyline;
/// keep the two in exact behavioral lockstep.
class NaivePolyline {
 public:
  explicit NaivePolyline(Weight value_at_zero = 0) : vaz_(value_at_zero) {}
  static NaivePolyline from_breakpoints(Weight value_at_zero,
                                        const std::vector<Breakpoint>& sorted);

  Weight value_at_zero() const { return vaz_; }
  void set_value_at_zero(Weight w) { vaz_ = w; }
  uint64_t size() const { return bps_.size(); }
  bool empty() const { return bps_.empty(); }

  NaivePolyline split_off_greater(Length key);
  void join(NaivePolyline&& right);
  Weight query(Length key) const;
  const std::vector<Breakpoint>& to_sorted_list() const { return bps_; }

  IncreaseResult batched_interval_increase(const std::vector<IncreaseInterval>& batch);
  std::vector<Polyline::PredAnswer> batched_value_predecessor(
      const std::vector<ValuePredQuery>& batch) const;
  void batched_interval_insert(const std::vector<InsertGroup>& groups);
  void batched_interval_delete(const std::vector<DeleteRange>& batch);
  std::vector<Weight> batched_query(const std::vector<Length>& keys) const;
  std::vector<Polyline::PredAnswer> batched_threshold_scan(
      const std::vector<Weight>& thresholds) const;

  void shift_keys(Length delta);
  void raise_values(Weight delta);
  std::optional<Breakpoint> front() const;
  std::optional<Breakpoint> back() const;
  void insert_breakpoint(Length key, Weight value);
  bool erase_breakpoint(Length key);

 private:
  Weight vaz_ = 0;
  std::vector<Breakpoint> bps_;
};

}  // namespace disperse
