#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setnorm {

/// A finite subset of an ordinal segment {0,...,N-1}, kept strictly
/// increasing. The empty set is a legal FinSet; ground sets are always
/// segments, with an order-embedding layer available for arbitrary index
/// sets (see slice/theta_map).
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::uint32_t> elems);
  FinSet(std::initializer_list<std::uint32_t> elems);

  static FinSet segment(std::uint32_t n);  // {0,...,n-1}

  const std::vector<std::uint32_t>& elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  std::uint32_t min() const;
  std::uint32_t max() const;
  std::uint32_t operator[](std::size_t i) const { return elems_[i]; }
  bool contains(std::uint32_t x) const;

  bool operator==(const FinSet&) const = default;
  /// Lexicographic on the element sequence; used for canonical orderings.
  bool operator<(const FinSet& o) const { return elems_ < o.elems_; }

  FinSet set_union(const FinSet& o) const;
  FinSet set_intersection(const FinSet& o) const;
  FinSet set_difference(const FinSet& o) const;
  bool subset_of(const FinSet& o) const;

  /// A <= B elementwise block order: max(A) < min(B). Empty sets compare true.
  bool entirely_below(const FinSet& o) const;

  /// Initial-segment order: *this is an initial part of o. The empty set is
  /// an initial segment of everything.
  bool initial_segment_of(const FinSet& o) const;

  std::string to_string() const;

 private:
  std::vector<std::uint32_t> elems_;
};

/// A finite block sequence: nonempty terms, each entirely below the next.
struct BlockSeq {
  std::vector<FinSet> terms;

  BlockSeq() = default;
  explicit BlockSeq(std::vector<FinSet> t) : terms(std::move(t)) {}
  std::size_t size() const { return terms.size(); }
};

/// True iff all terms are nonempty and consecutive terms satisfy max < min.
bool is_block(const std::vector<FinSet>& seq);

/// Witness that two sets are in n-Delta-position: root = I, tail = J with
/// I < J, I an initial segment of both arguments, and I u J the whole
/// intersection.
struct DeltaWitness {
  FinSet root;
  FinSet tail;
};

/// Returns the witness with maximal |I| if s and t are in n-Delta-position,
/// nullopt otherwise.
std::optional<DeltaWitness> n_delta_position(const FinSet& s, const FinSet& t,
                                             std::uint32_t n);

/// Smallest k such that s,t are in k-Delta-position (always exists).
std::uint32_t min_delta_parameter(const FinSet& s, const FinSet& t);

/// Root and a maximal-length subsequence whose pairwise intersections all
/// equal the root. Exhaustive for lists of length <= 20, greedy beyond.
struct DeltaSystem {
  FinSet root;
  std::vector<std::size_t> indices;
};
DeltaSystem delta_system_extract(const std::vector<FinSet>& list);

/// The unique order-preserving bijection between two sets of equal size,
/// as an explicit pairing a[i] -> b[i].
std::vector<std::pair<std::uint32_t, std::uint32_t>> theta_map(const FinSet& a,
                                                               const FinSet& b);

/// Image of s under theta_{s,t} applied elementwise to x (x must lie in s).
std::uint32_t theta_apply(const FinSet& s, const FinSet& t, std::uint32_t x);

/// s[I]: the elements of s at the positions listed in I.
FinSet slice(const FinSet& s, const FinSet& positions);

/// True iff s with its minimum removed is an initial segment of t.
/// s must be nonempty.
bool shift_related(const FinSet& s, const FinSet& t);

/// All size-k subsets of the elements of `from`, in lexicographic order.
std::vector<FinSet> subsets_of_size(const FinSet& from, std::size_t k);

/// All subsets (including empty), by size then lexicographic.
std::vector<FinSet> all_subsets(const FinSet& from);

}  // namespace setnorm
