#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setnorm/finset.hpp"

namespace setnorm {

/// A finite table for a two-variable function rho(a,b), a < b < N, with
/// colors < M. Valid tables satisfy, for all a < b < c:
///   (a.1) rho(a,b) <= max{rho(a,c), rho(b,c)}
///   (a.2) rho(a,c) <= max{rho(a,b), rho(b,c)}
///   (b)   rho(a,c) != rho(b,c) for a != b
///   (c)   rho(a,b) != rho(b,c)
class RhoTable {
 public:
  RhoTable() : n_(0), m_(0) {}
  RhoTable(std::uint32_t domain_size, std::uint32_t range_size);

  std::uint32_t domain_size() const { return n_; }
  std::uint32_t range_size() const { return m_; }

  std::uint32_t get(std::uint32_t a, std::uint32_t b) const;
  void set(std::uint32_t a, std::uint32_t b, std::uint32_t color);

  /// Total evaluation used by the f_i recursion: symmetric in the arguments,
  /// 0 on the diagonal. Ordered lookups hit the stored table.
  std::uint32_t eval(std::uint32_t a, std::uint32_t b) const {
    if (a == b) return 0;
    return a < b ? get(a, b) : get(b, a);
  }

  /// Restriction to a subset of the domain, colors unchanged, domain
  /// relabelled to {0,...,|subset|-1}.
  RhoTable restrict(const FinSet& subset) const;

 private:
  std::uint32_t n_, m_;
  std::vector<std::uint32_t> values_;  // index b*(b-1)/2 + a
};

struct RhoViolation {
  enum class Kind { A1, A2, B, C };
  Kind kind;
  // (alpha, beta, gamma) for A1/A2/C; (alpha, alphabar, beta) for B.
  std::uint32_t x, y, z;
  std::string to_string() const;
};

/// Lists every violated instance of (a.1), (a.2), (b), (c).
/// Empty report iff the table is a valid rho-function table.
std::vector<RhoViolation> verify_rho(const RhoTable& t);

/// Backtracking synthesis: pairs filled in lexicographic (beta, alpha) order,
/// minimal-color-first (optionally permuted by `seed`), with forward checking
/// of (b) and (c). Returns a valid table of minimal achievable range size
/// <= m_max, or nullopt.
std::optional<RhoTable> synthesize_rho(std::uint32_t n, std::uint32_t m_max,
                                       std::optional<std::uint64_t> seed = {});

/// A tower of rho tables feeding the f_i recursion: tables[0] acts on the
/// ground segment and is used by f_1, tables[i] by f_{i+1}.
struct RhoStack {
  std::uint32_t depth = 0;  // number of tables
  std::uint32_t ground_size = 0;
  std::vector<RhoTable> tables;
};

/// Synthesizes `n` compatible tables: tables[0] on the ground segment and
/// each later domain covering the previous range. Deterministic given seed.
/// Throws std::runtime_error naming the failing level if synthesis fails.
RhoStack build_stack(std::uint32_t n, std::uint32_t ground_size,
                     std::optional<std::uint64_t> seed = {});

}  // namespace setnorm
