#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "setnorm/finset.hpp"
#include "setnorm/rho.hpp"

namespace setnorm {

/// Memoized evaluator for the tower recursion
///   f_0(a) = a,   f_i(a_0,...,a_i) = rho_i(f_{i-1}(a_0..a_{i-1}), f_{i-1}(a_1..a_i))
/// over a RhoStack (tables[i-1] implements rho_i). Safe for concurrent
/// readers; results do not depend on evaluation order.
class FiTable {
 public:
  explicit FiTable(RhoStack stack) : stack_(std::move(stack)) {}

  const RhoStack& stack() const { return stack_; }
  std::uint32_t depth() const { return stack_.depth; }

  /// tuple must have size i+1 and entries below the ground size.
  std::uint32_t f_eval(std::uint32_t i, const FinSet& tuple) const;

 private:
  RhoStack stack_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>,
                   std::uint32_t>
      memo_;
};

/// Injective encoding of a finite sequence of naturals into a natural
/// (binary comma code). Throws on 64-bit overflow.
std::uint64_t profile_encode(const std::vector<std::uint32_t>& profile);

/// Color of a block sequence by its cardinality profile.
std::uint64_t gcard_color(const BlockSeq& b);

/// Shift-increasing on [b]^{i+1}: f_i(s) < f_i(t) for every pair s,t in
/// [b]^{i+1} with s\{min s} an initial segment of t and min s < min t.
bool shift_increasing_on(const FiTable& t, std::uint32_t i, const FinSet& b);

/// Min-dependence on [b]^{i+1}: f_i(s) = f_i(t) implies min s = min t.
bool min_dependent_on(const FiTable& t, std::uint32_t i, const FinSet& b);

/// Searches for a subset of `a` of size `target` on which every f_i
/// (i <= depth) is shift-increasing, via the 3^(n+1) window coloring and
/// brute-force monochromatic search. nullopt when no subset of that size
/// works (insufficient input).
std::optional<FinSet> shift_increasing_subset(const FinSet& a, const FiTable& t,
                                              std::size_t target);

/// As above but additionally min-dependent for every i <= depth.
std::optional<FinSet> min_dependent_subset(const FinSet& a, const FiTable& t,
                                           std::size_t target);

/// Membership in the family B_n: f_n min-dependent on [s]^{n+1} and f_i
/// shift-increasing on [s]^{i+1} for i < n.
bool bn_member(const FinSet& s, const FiTable& t);

/// Structured color token of c_n: the cardinality of s together with the
/// full positional f_n table over (n+1)-subsets (colex order of position
/// tuples). Sets of size <= n get the empty table.
struct CnToken {
  std::uint32_t card = 0;
  std::vector<std::uint32_t> table;

  bool operator==(const CnToken&) const = default;
  bool operator<(const CnToken& o) const {
    return std::tie(card, table) < std::tie(o.card, o.table);
  }
  /// Canonical injective serialization.
  std::string to_string() const;
};

CnToken cn_color(const FinSet& s, const FiTable& t);

/// Position tuples of size k in {0,...,card-1}, colexicographic order.
std::vector<FinSet> position_tuples_colex(std::uint32_t card, std::uint32_t k);

/// One good-coloring violation: an edge whose endpoints share a color.
struct AuditEntry {
  FinSet s, t;
  std::string color;
  std::uint32_t witness_k;  // minimal k with s,t in k-Delta-position
};

/// Result of a good-coloring audit. `violations` holds all pairs of distinct
/// vertices with equal colors joined by the edge relation; `equal_color_k`
/// logs, for every equal-color pair, the minimal Delta-position parameter
/// (for parameter-gap probes).
struct AuditResult {
  std::vector<AuditEntry> violations;
  std::vector<std::uint32_t> equal_color_k;
};

/// A vertex sample with precomputed color tokens (canonical strings).
struct ColoredGraphSample {
  std::vector<FinSet> vertices;
  std::vector<std::string> colors;
};

/// Audits the sample against an arbitrary edge predicate.
AuditResult good_coloring_audit(
    const ColoredGraphSample& sample,
    const std::function<bool(const FinSet&, const FinSet&)>& edge);

/// Builds the c_n sample over all B_n members inside the ground segment and
/// audits it against the "not in n-Delta-position" edge relation with the
/// given parameter.
AuditResult cn_good_coloring_audit(const FiTable& t,
                                   std::uint32_t delta_parameter);

/// Checks the identification property of the recursion: whenever
///   f_i(a, a_0..a_{i-1}) = f_i(abar, a_0..a_{i-1}) and
///   f_j(a, a_0..a_{j-1}), f_j(abar, a_0..a_{j-1}) < f_j(a_0..a_j) for j < i,
/// then a = abar. Returns all counterexample tuples (expected empty for
/// valid stacks). Exhaustive over the ground segment for all i <= depth.
std::vector<FinSet> identification_check(const FiTable& t);

}  // namespace setnorm
