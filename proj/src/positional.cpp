#include "setnorm/positional.hpp"

#include <algorithm>
#include <stdexcept>

namespace setnorm {

std::uint32_t FiTable::f_eval(std::uint32_t i, const FinSet& tuple) const {
  if (tuple.size() != i + 1)
    throw std::invalid_argument("f_eval: tuple must have size i+1");
  if (!tuple.empty() && tuple.max() >= stack_.ground_size)
    throw std::invalid_argument("f_eval: entry outside ground segment");
  if (i == 0) return tuple[0];
  if (i > stack_.depth) throw std::invalid_argument("f_eval: level above stack depth");
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = memo_.find({i, tuple.elems()});
    if (it != memo_.end()) return it->second;
  }
  std::vector<std::uint32_t> head(tuple.elems().begin(), tuple.elems().end() - 1);
  std::vector<std::uint32_t> tail(tuple.elems().begin() + 1, tuple.elems().end());
  std::uint32_t a = f_eval(i - 1, FinSet(std::move(head)));
  std::uint32_t b = f_eval(i - 1, FinSet(std::move(tail)));
  const RhoTable& table = stack_.tables[i - 1];
  if (std::max(a, b) >= std::max<std::uint32_t>(table.domain_size(), 1) && a != b)
    throw std::logic_error("f_eval: value outside the next table's domain");
  std::uint32_t v = table.eval(a, b);
  std::lock_guard<std::mutex> lk(mu_);
  memo_.emplace(std::make_pair(i, tuple.elems()), v);
  return v;
}

std::uint64_t profile_encode(const std::vector<std::uint32_t>& profile) {
  // Binary comma code: sentinel 1, then per entry the bits of the value as
  // 00/01 pairs followed by the separator 10. Injective on sequences.
  std::uint64_t acc = 1;
  auto push2 = [&acc](unsigned two) {
    if (acc >> 62) throw std::overflow_error("profile_encode: 64-bit overflow");
    acc = (acc << 2) | two;
  };
  for (std::uint32_t v : profile) {
    int msb = 0;
    for (int bit = 31; bit >= 0; --bit)
      if (v >> bit) {
        msb = bit;
        break;
      }
    for (int bit = msb; bit >= 0; --bit) push2((v >> bit) & 1u);
    push2(2);  // separator
  }
  return acc;
}

std::uint64_t gcard_color(const BlockSeq& b) {
  if (!is_block(b.terms)) throw std::invalid_argument("gcard_color: not a block sequence");
  std::vector<std::uint32_t> profile;
  profile.reserve(b.terms.size());
  for (const auto& t : b.terms) profile.push_back(static_cast<std::uint32_t>(t.size()));
  return profile_encode(profile);
}

bool shift_increasing_on(const FiTable& t, std::uint32_t i, const FinSet& b) {
  // Sf pairs within [b]^{i+1} are exactly (s, (s \ min) + x) for x above s.
  auto tuples = subsets_of_size(b, i + 1);
  for (const auto& s : tuples) {
    std::uint32_t fs = t.f_eval(i, s);
    for (std::uint32_t x : b.elems()) {
      if (x <= s.max()) continue;
      std::vector<std::uint32_t> v(s.elems().begin() + 1, s.elems().end());
      v.push_back(x);
      FinSet shifted(std::move(v));
      if (!(t.f_eval(i, shifted) > fs)) return false;
    }
  }
  return true;
}

bool min_dependent_on(const FiTable& t, std::uint32_t i, const FinSet& b) {
  // f_i(s) = f_i(t) must force min s = min t: bucket tuples by value
  std::map<std::uint32_t, std::uint32_t> value_min;
  for (const auto& s : subsets_of_size(b, i + 1)) {
    std::uint32_t v = t.f_eval(i, s);
    auto [it, fresh] = value_min.emplace(v, s.min());
    if (!fresh && it->second != s.min()) return false;
  }
  return true;
}

namespace {

bool all_levels_shift_increasing(const FiTable& t, const FinSet& b) {
  for (std::uint32_t i = 0; i <= t.depth(); ++i)
    if (!shift_increasing_on(t, i, b)) return false;
  return true;
}

// The window coloring from the extraction argument: an (n+2)-subset gets,
// per level i <= n, the sign of f_i(first i+1) vs f_i(shifted i+1).
// All-zero means strictly increasing in every level.
bool window_all_zero(const FiTable& t, const FinSet& w) {
  std::uint32_t n = t.depth();
  for (std::uint32_t i = 0; i <= n; ++i) {
    std::vector<std::uint32_t> head(w.elems().begin(), w.elems().begin() + i + 1);
    std::vector<std::uint32_t> shifted(w.elems().begin() + 1,
                                       w.elems().begin() + i + 2);
    if (!(t.f_eval(i, FinSet(head)) < t.f_eval(i, FinSet(shifted)))) return false;
  }
  return true;
}

}  // namespace

std::optional<FinSet> shift_increasing_subset(const FinSet& a, const FiTable& t,
                                              std::size_t target) {
  if (target > a.size()) return std::nullopt;
  std::uint32_t n = t.depth();
  for (const auto& b : subsets_of_size(a, target)) {
    if (b.size() >= n + 2u) {
      bool mono = true;
      for (const auto& w : subsets_of_size(b, n + 2u))
        if (!window_all_zero(t, w)) {
          mono = false;
          break;
        }
      if (!mono) continue;
    }
    // Window monochromaticity covers all interior Sf pairs; the direct check
    // also covers windows that cannot be extended upward inside b.
    if (all_levels_shift_increasing(t, b)) return b;
  }
  return std::nullopt;
}

std::optional<FinSet> min_dependent_subset(const FinSet& a, const FiTable& t,
                                           std::size_t target) {
  if (target > a.size()) return std::nullopt;
  std::uint32_t n = t.depth();
  for (const auto& b : subsets_of_size(a, target)) {
    if (!all_levels_shift_increasing(t, b)) continue;
    bool ok = true;
    for (std::uint32_t i = 0; i <= n && ok; ++i)
      if (!min_dependent_on(t, i, b)) ok = false;
    if (ok) return b;
  }
  return std::nullopt;
}

bool bn_member(const FinSet& s, const FiTable& t) {
  std::uint32_t n = t.depth();
  if (!min_dependent_on(t, n, s)) return false;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!shift_increasing_on(t, i, s)) return false;
  return true;
}

std::vector<FinSet> position_tuples_colex(std::uint32_t card, std::uint32_t k) {
  // Colex: tuples ordered by their top element, then recursively.
  std::vector<FinSet> out;
  if (k == 0) {
    out.push_back(FinSet{});
    return out;
  }
  if (card < k) return out;
  for (std::uint32_t top = k - 1; top < card; ++top)
    for (const auto& low : position_tuples_colex(top, k - 1)) {
      std::vector<std::uint32_t> v = low.elems();
      v.push_back(top);
      out.push_back(FinSet(std::move(v)));
    }
  return out;
}

std::string CnToken::to_string() const {
  std::string s = "c" + std::to_string(card) + ":";
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(table[i]);
  }
  return s;
}

CnToken cn_color(const FinSet& s, const FiTable& t) {
  CnToken tok;
  tok.card = static_cast<std::uint32_t>(s.size());
  std::uint32_t n = t.depth();
  if (s.size() <= n) return tok;  // empty table; color still fixes |s|
  for (const auto& pos : position_tuples_colex(tok.card, n + 1))
    tok.table.push_back(t.f_eval(n, slice(s, pos)));
  return tok;
}

AuditResult good_coloring_audit(
    const ColoredGraphSample& sample,
    const std::function<bool(const FinSet&, const FinSet&)>& edge) {
  AuditResult res;
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < sample.vertices.size(); ++i)
    buckets[sample.colors[i]].push_back(i);
  for (const auto& [color, idx] : buckets)
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (std::size_t q = p + 1; q < idx.size(); ++q) {
        const FinSet& s = sample.vertices[idx[p]];
        const FinSet& t = sample.vertices[idx[q]];
        if (s == t) continue;
        res.equal_color_k.push_back(min_delta_parameter(s, t));
        if (edge(s, t))
          res.violations.push_back({s, t, color, min_delta_parameter(s, t)});
      }
  return res;
}

AuditResult cn_good_coloring_audit(const FiTable& t,
                                   std::uint32_t delta_parameter) {
  ColoredGraphSample sample;
  FinSet ground = FinSet::segment(t.stack().ground_size);
  for (const auto& s : all_subsets(ground)) {
    if (!bn_member(s, t)) continue;
    sample.vertices.push_back(s);
    sample.colors.push_back(cn_color(s, t).to_string());
  }
  auto edge = [delta_parameter](const FinSet& a, const FinSet& b) {
    return !n_delta_position(a, b, delta_parameter).has_value();
  };
  return good_coloring_audit(sample, edge);
}

std::vector<FinSet> identification_check(const FiTable& t) {
  std::vector<FinSet> bad;
  std::uint32_t g = t.stack().ground_size;
  std::uint32_t n = t.depth();
  FinSet ground = FinSet::segment(g);
  for (std::uint32_t i = 1; i <= n; ++i) {
    // Tails a_0 < ... < a_{i-1}; heads a, abar below a_0.
    for (const auto& tail : subsets_of_size(ground, i)) {
      for (std::uint32_t a = 0; a < tail.min(); ++a)
        for (std::uint32_t abar = a + 1; abar < tail.min(); ++abar) {
          auto with_head = [&](std::uint32_t h, std::uint32_t len) {
            std::vector<std::uint32_t> v;
            v.push_back(h);
            for (std::uint32_t j = 0; j < len; ++j) v.push_back(tail[j]);
            return FinSet(std::move(v));
          };
          if (t.f_eval(i, with_head(a, i)) != t.f_eval(i, with_head(abar, i)))
            continue;
          bool hyp = true;
          for (std::uint32_t j = 0; j < i && hyp; ++j) {
            std::vector<std::uint32_t> pure(tail.elems().begin(),
                                            tail.elems().begin() + j + 1);
            std::uint32_t bound = t.f_eval(j, FinSet(pure));
            if (!(t.f_eval(j, with_head(a, j)) < bound &&
                  t.f_eval(j, with_head(abar, j)) < bound))
              hyp = false;
          }
          if (hyp) bad.push_back(with_head(a, i).set_union(FinSet{abar}));
        }
    }
  }
  return bad;
}

}  // namespace setnorm
