#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setnorm/finset.hpp"
#include "setnorm/rational.hpp"

namespace setnorm {

/// A finite set of (possibly astronomically large) ordinals kept as sorted
/// disjoint half-open runs [lo, hi) of big integers. Weight sets in the
/// conditional-norm construction grow fast enough that sets must be handled
/// by runs rather than by elements.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet interval(Int lo, Int hi);  // [lo, hi)
  static IntervalSet from_finset(const FinSet& s);
  static IntervalSet from_runs(std::vector<std::pair<Int, Int>> runs);

  const std::vector<std::pair<Int, Int>>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  Int size() const;
  Int min() const;  // least element
  Int max() const;  // greatest element

  bool contains(const Int& x) const;
  bool subset_of(const IntervalSet& o) const;
  bool entirely_below(const IntervalSet& o) const;  // max < o.min

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  Int intersection_size(const IntervalSet& o) const;

  /// Conversion to an explicit FinSet; nullopt if any element exceeds the
  /// 32-bit range or the set has more than `limit` elements.
  std::optional<FinSet> to_finset(std::size_t limit = 1u << 20) const;

  bool operator==(const IntervalSet&) const = default;
  bool operator<(const IntervalSet& o) const { return runs_ < o.runs_; }

  std::string to_string() const;

 private:
  std::vector<std::pair<Int, Int>> runs_;  // sorted, disjoint, non-adjacent
  void normalize();
};

}  // namespace setnorm
