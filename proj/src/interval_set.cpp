#include "setnorm/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace setnorm {

void IntervalSet::normalize() {
  std::sort(runs_.begin(), runs_.end());
  std::vector<std::pair<Int, Int>> out;
  for (auto& [lo, hi] : runs_) {
    if (lo >= hi) continue;
    if (!out.empty() && lo <= out.back().second) {
      if (hi > out.back().second) out.back().second = hi;
    } else {
      out.emplace_back(lo, hi);
    }
  }
  runs_ = std::move(out);
}

IntervalSet IntervalSet::interval(Int lo, Int hi) {
  IntervalSet s;
  if (lo < hi) s.runs_.emplace_back(std::move(lo), std::move(hi));
  return s;
}

IntervalSet IntervalSet::from_finset(const FinSet& f) {
  IntervalSet s;
  for (std::uint32_t x : f.elems()) s.runs_.emplace_back(Int(x), Int(x) + 1);
  s.normalize();
  return s;
}

IntervalSet IntervalSet::from_runs(std::vector<std::pair<Int, Int>> runs) {
  IntervalSet s;
  s.runs_ = std::move(runs);
  s.normalize();
  return s;
}

Int IntervalSet::size() const {
  Int n = 0;
  for (const auto& [lo, hi] : runs_) n += hi - lo;
  return n;
}

Int IntervalSet::min() const {
  if (empty()) throw std::logic_error("IntervalSet::min of empty set");
  return runs_.front().first;
}

Int IntervalSet::max() const {
  if (empty()) throw std::logic_error("IntervalSet::max of empty set");
  return runs_.back().second - 1;
}

bool IntervalSet::contains(const Int& x) const {
  for (const auto& [lo, hi] : runs_)
    if (x >= lo && x < hi) return true;
  return false;
}

bool IntervalSet::subset_of(const IntervalSet& o) const {
  for (const auto& [lo, hi] : runs_) {
    bool covered = false;
    for (const auto& [olo, ohi] : o.runs_)
      if (olo <= lo && hi <= ohi) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool IntervalSet::entirely_below(const IntervalSet& o) const {
  if (empty() || o.empty()) return true;
  return max() < o.min();
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  IntervalSet s;
  s.runs_ = runs_;
  s.runs_.insert(s.runs_.end(), o.runs_.begin(), o.runs_.end());
  s.normalize();
  return s;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  IntervalSet s;
  std::size_t i = 0, j = 0;
  while (i < runs_.size() && j < o.runs_.size()) {
    Int lo = std::max(runs_[i].first, o.runs_[j].first);
    Int hi = std::min(runs_[i].second, o.runs_[j].second);
    if (lo < hi) s.runs_.emplace_back(lo, hi);
    if (runs_[i].second < o.runs_[j].second)
      ++i;
    else
      ++j;
  }
  return s;
}

Int IntervalSet::intersection_size(const IntervalSet& o) const {
  return intersect(o).size();
}

std::optional<FinSet> IntervalSet::to_finset(std::size_t limit) const {
  if (size() > Int(limit)) return std::nullopt;
  std::vector<std::uint32_t> v;
  for (const auto& [lo, hi] : runs_) {
    if (hi > Int(0xffffffffull)) return std::nullopt;
    for (Int x = lo; x < hi; ++x) v.push_back(x.convert_to<std::uint32_t>());
  }
  return FinSet(std::move(v));
}

std::string IntervalSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (i) s += ",";
    const auto& [lo, hi] = runs_[i];
    if (hi == lo + 1)
      s += lo.str();
    else
      s += "[" + lo.str() + "," + hi.str() + ")";
  }
  return s + "}";
}

}  // namespace setnorm
