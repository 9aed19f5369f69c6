#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "setnorm/cnf_ordinal.hpp"
#include "setnorm/finset.hpp"
#include "setnorm/qvector.hpp"
#include "setnorm/rational.hpp"

namespace setnorm {

class Family;
using FamilyPtr = std::shared_ptr<const Family>;

/// An algebraic descriptor of a hereditary-style family of finite sets.
/// Descriptors are immutable; membership is memoized (thread-safe).
class Family {
 public:
  enum class Kind {
    Explicit,     // a finite list, as given
    Cube,         // all sets of size <= n
    Schreier,     // {} plus sets with |s| <= min s (naturals from 1)
    Product,      // unions of block sequences from `left` with mins in `right`
    HerProduct,   // downward closure of Product (needs ground bound)
    Restrict,     // members of `child` contained in gamma
    Projection,   // pointwise images under the gamma-projection (ground-bounded)
    Homogeneous,  // sets on which a coloring is constant in every arity <= n_max
  };

  static FamilyPtr explicit_list(std::vector<FinSet> sets);
  static FamilyPtr cube(std::uint32_t n);
  static FamilyPtr schreier();
  static FamilyPtr product(FamilyPtr left, FamilyPtr right);
  static FamilyPtr hereditary_product(FamilyPtr left, FamilyPtr right,
                                      std::uint32_t ground_bound);
  static FamilyPtr restrict(FamilyPtr child, FinSet gamma);
  static FamilyPtr projection(FamilyPtr child, FinSet gamma,
                              std::uint32_t ground_bound);
  static FamilyPtr homogeneous(std::function<std::string(const FinSet&)> coloring,
                               std::uint32_t n_max);

  Kind kind() const { return kind_; }
  std::uint32_t cube_n() const { return param_; }
  const std::vector<FinSet>& explicit_sets() const { return sets_; }
  const FamilyPtr& left() const { return left_; }
  const FamilyPtr& right() const { return right_; }
  const FinSet& gamma() const { return gamma_; }

  bool member(const FinSet& s) const;

  /// Structural hereditariness hint (true when heredity is guaranteed by
  /// construction; Product carries no guarantee).
  bool hereditary_hint() const;

  std::string to_string() const;

 private:
  Family(Kind k) : kind_(k) {}

  bool member_uncached(const FinSet& s) const;

  Kind kind_;
  std::uint32_t param_ = 0;      // Cube size, ground bound for Projection/HerProduct
  std::vector<FinSet> sets_;     // Explicit
  FamilyPtr left_, right_;       // Product / child
  FinSet gamma_;                 // Restrict / Projection
  std::function<std::string(const FinSet&)> coloring_;  // Homogeneous
  std::uint32_t hom_nmax_ = 0;

  mutable std::mutex mu_;
  mutable std::map<std::vector<std::uint32_t>, bool> memo_;
  mutable std::vector<FinSet> proj_cache_;  // materialized images
  mutable bool proj_cached_ = false;
};

/// Downward closure under subsets, deduplicated and sorted. The closure of
/// an empty list is empty.
std::vector<FinSet> hereditary_closure(const std::vector<FinSet>& list);

/// Finite surrogate of largeness: the family meets [a]^n.
bool is_large_window(const Family& f, const FinSet& a, std::uint32_t n);

/// All members contained in {0,...,ground-1}. Throws for ground > 22.
std::vector<FinSet> materialize(const Family& f, std::uint32_t ground);

/// The projection map gamma -> least element of Gamma >= gamma.
/// Throws above max Gamma.
std::uint32_t pi_project(const FinSet& gamma_set, std::uint32_t x);
/// Pointwise image; input sets reaching above max Gamma are rejected.
FinSet pi_project_set(const FinSet& gamma_set, const FinSet& s);

/// Cantor-Bendixson rank. Symbolic rules: Cube(n) -> n, Schreier -> omega,
/// Product -> rank(left)*rank(right); Explicit and other ground-bounded
/// descriptors by iterated derivative, where a member enters the derivative
/// iff it has at least `threshold` one-point extensions in the family.
CnfOrdinal cb_rank(const Family& f, std::uint32_t derivative_threshold = 1);

/// Iterated-derivative rank of a finite list (used as the Explicit route).
std::uint64_t explicit_rank_by_derivatives(const std::vector<FinSet>& list,
                                           std::uint32_t threshold = 1);

/// Ramsey number R(k,l,m): minimal N such that every m-coloring of [N]^k has
/// a monochromatic l-set. Brute-forced only while the search space stays
/// below 2^24 colorings; otherwise nullopt.
std::optional<std::uint32_t> ramsey_number(std::uint32_t k, std::uint32_t l,
                                           std::uint32_t m);

/// Homogeneous-set extraction by the prefix-color argument: color n-subsets
/// t by the colors of their proper prefixes, find a (2n-1)-subset of s
/// monochromatic for that, return its first n elements. The result is
/// rechecked for homogeneity in every arity <= n. nullopt when no
/// monochromatic window exists in s ("threshold not met").
std::optional<FinSet> homogeneous_extract(
    const std::function<std::string(const FinSet&)>& coloring, const FinSet& s,
    std::uint32_t n);

/// A certified near-scalar functional against a family trace: mu is a
/// probability vector with <mu, chi_s> <= bound for every member s inside
/// the window, bound is the exact LP optimum, and `dual` is the optimal
/// distribution over members certifying that no mu does better.
struct PtakWitness {
  QVector mu;
  Rat bound;
  std::vector<std::pair<FinSet, Rat>> dual;
};

PtakWitness ptak_witness(const Family& f, const FinSet& window);

/// Exact verification of the LP duality certificate carried by a witness.
bool ptak_certificate_ok(const Family& f, const FinSet& window,
                         const PtakWitness& w);

/// max_{s in family} |<x, chi_s>|, exact. Requires a hereditary family with
/// a fast maximization oracle (Schreier, Cube, Explicit) or a small window.
Rat schreier_norm(const QVector& x, const Family& f);

/// theta-freeness: theta(t) meets s only inside t, for every t inside s.
bool theta_free_check(const std::function<FinSet(const FinSet&)>& theta,
                      const FinSet& s);

/// Parses the descriptor mini-language: cube(3), schreier,
/// product(cube(2),schreier), restrict(schreier,[3,4,5,6]),
/// project(schreier,[2,4,6,8]), explicit:@file.json.
FamilyPtr parse_descriptor(
    const std::string& text,
    const std::function<std::vector<FinSet>(const std::string&)>& file_loader =
        nullptr);

}  // namespace setnorm
