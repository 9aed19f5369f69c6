#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "setnorm/families.hpp"
#include "setnorm/qvector.hpp"
#include "setnorm/rational.hpp"

namespace setnorm {

/// A Tsirelson-type norm instance: a weight 0 < theta < 1, a hereditary
/// family over the ground segment, and the ground size.
struct TNormInstance {
  Rat theta;
  FamilyPtr family;
  std::uint32_t ground;

  TNormInstance(Rat th, FamilyPtr fam, std::uint32_t g);
};

/// Searches for an interleaved witness {gamma_i} in the family with
/// gamma_0 <= E_0 < gamma_1 <= E_1 < ... Returns the lexicographically least
/// witness, or nullopt. Blocks must form a valid block sequence.
std::optional<FinSet> admissible(const std::vector<FinSet>& blocks,
                                 const TNormInstance& inst);

/// The exact norm, computed by iterating
///   |x|_0 = |x|_inf,
///   |x|_{k+1} = max(|x|_k, sup over admissible partitions of theta*sum |E_i x|_k)
/// memoized over sub-support intervals until two successive iterates agree
/// everywhere. Values are exact rationals. Throws if the iteration cap
/// |supp|+2 is exceeded (stabilization diagnostic).
Rat t_norm(const QVector& x, const TNormInstance& inst);

/// Both sides of the projection identity: the norm for the instance family
/// and for its pointwise projection onto gamma_set (materialized within the
/// instance ground). supp(x) must lie inside gamma_set.
std::pair<Rat, Rat> projection_check(const QVector& x, const TNormInstance& inst,
                                     const FinSet& gamma_set);

/// Norms of the partial-sum vectors u_0 + ... + u_{m-1}, m <= m_max, with the
/// fitted exponent log(m)/log(norm) where the norm exceeds 1.
struct BellenotRow {
  std::uint32_t m;
  Rat norm;
  std::optional<double> p_hat;
};
std::vector<BellenotRow> bellenot_profile(const TNormInstance& inst,
                                          std::uint32_t m_max);

}  // namespace setnorm
