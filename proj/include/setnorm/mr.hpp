#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setnorm/interval_set.hpp"
#include "setnorm/positional.hpp"
#include "setnorm/qvector.hpp"
#include "setnorm/rational.hpp"

namespace setnorm {

/// A lacunary weight set: strictly increasing naturals, all >= max(n,1),
/// whose pairwise sqrt-ratio double sum is certified <= 1. slack_lo is a
/// certified lower bound on 1 minus that sum.
struct LacunarySet {
  std::vector<Int> weights;
  Rat slack_lo;
};

/// Greedy generator: weight j is the least integer keeping its pairwise
/// contribution within the equal per-level allowance 1/(count-1), so the
/// whole set stays within budget for exactly `count` elements.
LacunarySet lacunary_set(std::uint32_t n, std::size_t count);

/// Certified check of the pairwise sqrt-ratio sum: returns a lower bound on
/// the slack (negative means the set is certified invalid).
Rat lacunary_slack(const std::vector<Int>& weights, unsigned prec_bits = 128);

/// A computed norm value as a certified interval.
struct NormEnclosure {
  Rat lo, hi;
  Rat tol;
};

/// An exact value of the form  rational + sum_w coeff_w / sqrt(w)
/// (w ranges over non-square integers). Products of two weights fold into
/// the rational part whenever the product is a perfect square, which keeps
/// same-weight pairings exact.
struct SqrtSum {
  Rat rational;
  std::map<Int, Rat> radicals;

  void add(const Rat& coeff, const Int& under_sqrt);
  SqrtSum& operator+=(const SqrtSum& o);
  QInterval enclosure(unsigned prec_bits) const;
  bool is_rational() const { return radicals.empty(); }
};

/// A finitely supported vector given by runs carrying a rational coefficient
/// and a weight: the value on the run is coeff / sqrt(weight). Plain rational
/// vectors embed with weight 1.
struct WeightedRun {
  Int lo, hi;   // half-open
  Rat coeff;
  Int weight;
};

class MrVector {
 public:
  MrVector() = default;
  explicit MrVector(std::vector<WeightedRun> runs);
  static MrVector from_qvector(const QVector& x);
  /// coeff/sqrt(weight) on each run of the piece.
  static MrVector block(const IntervalSet& piece, const Rat& coeff,
                        const Int& weight);

  MrVector concat(const MrVector& o) const;  // supports must not overlap
  MrVector negated() const;
  const std::vector<WeightedRun>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  IntervalSet support() const;

  SqrtSum l1() const;
  /// <x, 1_t>/sqrt(m): inner product against a normalized indicator.
  SqrtSum dot_block(const IntervalSet& t, const Int& m) const;

 private:
  std::vector<WeightedRun> runs_;  // sorted by lo, disjoint
};

/// A finite instance of the conditional-norm construction. Two kinds:
///  - BnStack: a small ground segment carrying a rho-function stack; the
///    family is B_n of the stack and the coloring is the positional token,
///    enumerated into the weight list in reachable-union BFS order.
///  - SegmentChain: a chain instance whose family is the set of initial
///    segments [0, a_i) with forced colors weights[i]; grounds and weights
///    may be astronomically large (interval arithmetic throughout).
class MrInstance {
 public:
  enum class Kind { BnStack, SegmentChain };

  static MrInstance bn_stack(RhoStack stack, std::size_t palette_count);
  static MrInstance segment_chain(std::uint32_t n, std::size_t length,
                                  const Int& headroom);

  Kind kind() const { return kind_; }
  const Int& ground() const { return ground_; }
  std::uint32_t n() const { return n_; }
  const std::vector<Int>& weights() const { return weights_; }
  const Rat& slack_lo() const { return slack_lo_; }
  const std::vector<Int>& chain() const { return chain_; }  // SegmentChain
  const FiTable& fi() const;                                 // BnStack

  /// Weight index of the color of a union (the family member reached so
  /// far), nullopt when the union is outside the colored family.
  std::optional<std::size_t> color_index(const IntervalSet& u) const;

  /// Membership of the union in the instance family (condition (a)).
  bool in_family(const IntervalSet& u) const;

  std::string to_json() const;
  static MrInstance from_json(const std::string& text);

 private:
  MrInstance() = default;
  void build_bn_tokens();

  Kind kind_ = Kind::BnStack;
  Int ground_;
  std::uint32_t n_ = 0;
  std::vector<Int> weights_;
  Rat slack_lo_;
  std::vector<Int> chain_;  // a_0 = 0 < a_1 < ... <= ground
  std::shared_ptr<FiTable> fi_;
  std::map<FinSet, std::size_t> union_color_;  // reachable unions -> index
};

/// A special sequence: a block sequence whose i-th term has the size forced
/// by the color of the union of the earlier terms, all partial unions lying
/// in the instance family.
struct SpecialSeq {
  std::vector<IntervalSet> terms;
};

/// All special sequences of length exactly d with terms inside `ground`,
/// lexicographic order. Only enumerable instances (BnStack) support this.
std::vector<SpecialSeq> enumerate_special(const MrInstance& inst,
                                          const FinSet& ground, std::size_t d);

/// Certified enclosure of the conditional norm
///   |x| = max(|x|_inf, sup_f |<x, f>|)
/// over the symmetrized norming functionals f = sum_i 1_{t_i}/sqrt(|t_i|)
/// of special sequences. Same-weight pairings are folded exactly; radicals
/// are enclosed by adaptive-precision interval arithmetic until the width
/// is <= tol. Functional branches whose forced weight exceeds `cutoff` are
/// replaced by the certified tail bound l1(x)/sqrt(cutoff); the default
/// cutoff (nullopt) enumerates every materialized weight.
NormEnclosure mr_norm(const MrVector& x, const MrInstance& inst, const Rat& tol,
                      std::optional<Int> cutoff = std::nullopt);
NormEnclosure mr_norm(const QVector& x, const MrInstance& inst, const Rat& tol);

/// The conditionality witness pair built from a length-k special sequence:
/// x alternates signs over the terms, y keeps the even-indexed part.
struct WitnessParts {
  Rat head;        // |sum of leading matched signs|, <= 1
  Rat middle;      // overlap of the diverging middles over |s_{i0}|, <= 1
  QInterval rest;  // remaining diagonal + cross-weight mass, <= 2
};

struct WitnessReport {
  std::size_t k = 0;
  NormEnclosure norm_x, norm_y;
  Rat suppression_lower;  // (k/2) / hi(norm_x)
  WitnessParts parts;     // decomposition against the deepest functional
  bool parts_bounded = false;  // head <= 1, middle <= 1, rest <= 2
};

struct UnconditionalityWitness {
  MrVector x, y;
  WitnessReport report;
};

UnconditionalityWitness unconditionality_witness(const MrInstance& inst,
                                                 std::size_t k, const Rat& tol);

}  // namespace setnorm
