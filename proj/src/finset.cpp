#include "setnorm/finset.hpp"

#include <algorithm>
#include <stdexcept>

namespace setnorm {

FinSet::FinSet(std::vector<std::uint32_t> elems) : elems_(std::move(elems)) {
  for (std::size_t i = 1; i < elems_.size(); ++i)
    if (elems_[i - 1] >= elems_[i])
      throw std::invalid_argument("FinSet: elements must be strictly increasing");
}

FinSet::FinSet(std::initializer_list<std::uint32_t> elems)
    : FinSet(std::vector<std::uint32_t>(elems)) {}

FinSet FinSet::segment(std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = i;
  return FinSet(std::move(v));
}

std::uint32_t FinSet::min() const {
  if (empty()) throw std::logic_error("min of empty set");
  return elems_.front();
}

std::uint32_t FinSet::max() const {
  if (empty()) throw std::logic_error("max of empty set");
  return elems_.back();
}

bool FinSet::contains(std::uint32_t x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

FinSet FinSet::set_union(const FinSet& o) const {
  std::vector<std::uint32_t> v;
  std::set_union(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                 std::back_inserter(v));
  FinSet r;
  r.elems_ = std::move(v);
  return r;
}

FinSet FinSet::set_intersection(const FinSet& o) const {
  std::vector<std::uint32_t> v;
  std::set_intersection(elems_.begin(), elems_.end(), o.elems_.begin(),
                        o.elems_.end(), std::back_inserter(v));
  FinSet r;
  r.elems_ = std::move(v);
  return r;
}

FinSet FinSet::set_difference(const FinSet& o) const {
  std::vector<std::uint32_t> v;
  std::set_difference(elems_.begin(), elems_.end(), o.elems_.begin(),
                      o.elems_.end(), std::back_inserter(v));
  FinSet r;
  r.elems_ = std::move(v);
  return r;
}

bool FinSet::subset_of(const FinSet& o) const {
  return std::includes(o.elems_.begin(), o.elems_.end(), elems_.begin(),
                       elems_.end());
}

bool FinSet::entirely_below(const FinSet& o) const {
  if (empty() || o.empty()) return true;
  return max() < o.min();
}

bool FinSet::initial_segment_of(const FinSet& o) const {
  if (size() > o.size()) return false;
  return std::equal(elems_.begin(), elems_.end(), o.elems_.begin());
}

std::string FinSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(elems_[i]);
  }
  return s + "}";
}

bool is_block(const std::vector<FinSet>& seq) {
  for (const auto& t : seq)
    if (t.empty()) return false;
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i - 1].max() >= seq[i].min()) return false;
  return true;
}

namespace {
// Length of the longest common prefix of the element sequences.
std::size_t common_prefix_len(const FinSet& s, const FinSet& t) {
  std::size_t n = std::min(s.size(), t.size());
  std::size_t i = 0;
  while (i < n && s[i] == t[i]) ++i;
  return i;
}
}  // namespace

std::optional<DeltaWitness> n_delta_position(const FinSet& s, const FinSet& t,
                                             std::uint32_t n) {
  // I must be a common initial segment of s and t; J is the rest of the
  // intersection. The witness with maximal |I| takes the full common prefix.
  std::size_t ell = common_prefix_len(s, t);
  FinSet inter = s.set_intersection(t);
  if (inter.size() - ell > n) return std::nullopt;
  std::vector<std::uint32_t> root(inter.elems().begin(),
                                  inter.elems().begin() + ell);
  std::vector<std::uint32_t> tail(inter.elems().begin() + ell,
                                  inter.elems().end());
  return DeltaWitness{FinSet(std::move(root)), FinSet(std::move(tail))};
}

std::uint32_t min_delta_parameter(const FinSet& s, const FinSet& t) {
  std::size_t ell = common_prefix_len(s, t);
  return static_cast<std::uint32_t>(s.set_intersection(t).size() - ell);
}

namespace {
DeltaSystem best_for_root(const FinSet& root, const std::vector<FinSet>& list,
                          bool exhaustive) {
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < list.size(); ++i)
    if (root.subset_of(list[i])) cand.push_back(i);
  auto compatible = [&](std::size_t a, std::size_t b) {
    return list[a].set_intersection(list[b]) == root;
  };
  std::vector<std::size_t> best;
  if (!exhaustive) {
    for (std::size_t i : cand) {
      bool ok = true;
      for (std::size_t j : best)
        if (!compatible(i, j)) { ok = false; break; }
      if (ok) best.push_back(i);
    }
    return {root, best};
  }
  // Max clique on the compatibility graph, branch and bound over candidates.
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() + (cand.size() - from) <= best.size()) return;
    for (std::size_t k = from; k < cand.size(); ++k) {
      bool ok = true;
      for (std::size_t j : cur)
        if (!compatible(cand[k], j)) { ok = false; break; }
      if (!ok) continue;
      cur.push_back(cand[k]);
      if (cur.size() > best.size()) best = cur;
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return {root, best};
}
}  // namespace

DeltaSystem delta_system_extract(const std::vector<FinSet>& list) {
  if (list.empty()) throw std::invalid_argument("delta_system_extract: empty list");
  bool exhaustive = list.size() <= 20;
  std::vector<FinSet> roots;
  roots.push_back(FinSet{});
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j)
      roots.push_back(list[i].set_intersection(list[j]));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  DeltaSystem best{FinSet{}, {}};
  for (const auto& r : roots) {
    DeltaSystem d = best_for_root(r, list, exhaustive);
    if (d.indices.size() > best.indices.size()) best = d;
  }
  return best;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> theta_map(const FinSet& a,
                                                               const FinSet& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("theta_map: size mismatch");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> m;
  m.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m.emplace_back(a[i], b[i]);
  return m;
}

std::uint32_t theta_apply(const FinSet& s, const FinSet& t, std::uint32_t x) {
  if (s.size() != t.size())
    throw std::invalid_argument("theta_apply: size mismatch");
  auto it = std::lower_bound(s.elems().begin(), s.elems().end(), x);
  if (it == s.elems().end() || *it != x)
    throw std::invalid_argument("theta_apply: element not in domain");
  return t[static_cast<std::size_t>(it - s.elems().begin())];
}

FinSet slice(const FinSet& s, const FinSet& positions) {
  std::vector<std::uint32_t> v;
  v.reserve(positions.size());
  for (std::uint32_t p : positions.elems()) {
    if (p >= s.size()) throw std::invalid_argument("slice: position out of range");
    v.push_back(s[p]);
  }
  return FinSet(std::move(v));
}

bool shift_related(const FinSet& s, const FinSet& t) {
  if (s.empty()) throw std::invalid_argument("shift_related: s empty");
  std::vector<std::uint32_t> tail(s.elems().begin() + 1, s.elems().end());
  return FinSet(std::move(tail)).initial_segment_of(t);
}

std::vector<FinSet> subsets_of_size(const FinSet& from, std::size_t k) {
  std::vector<FinSet> out;
  std::size_t n = from.size();
  if (k > n) return out;
  if (k == 0) {
    out.push_back(FinSet{});
    return out;
  }
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<std::uint32_t> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = from[idx[i]];
    out.push_back(FinSet(std::move(v)));
    std::size_t i = k;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

std::vector<FinSet> all_subsets(const FinSet& from) {
  std::vector<FinSet> out;
  for (std::size_t k = 0; k <= from.size(); ++k) {
    auto s = subsets_of_size(from, k);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

}  // namespace setnorm
