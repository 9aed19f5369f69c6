#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace setnorm {

/// An ordinal below omega^omega in Cantor normal form: a strictly
/// exponent-decreasing list of (exponent, coefficient) terms with positive
/// coefficients. Supports ordinal +, * and comparison.
class CnfOrdinal {
 public:
  CnfOrdinal() = default;  // zero
  static CnfOrdinal finite(std::uint64_t n);
  static CnfOrdinal omega_power(std::uint32_t exp, std::uint64_t coeff = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  std::uint64_t finite_value() const;  // throws if not finite

  const std::vector<std::pair<std::uint32_t, std::uint64_t>>& terms() const {
    return terms_;
  }

  CnfOrdinal operator+(const CnfOrdinal& o) const;
  CnfOrdinal operator*(const CnfOrdinal& o) const;
  bool operator==(const CnfOrdinal&) const = default;
  bool operator<(const CnfOrdinal& o) const;
  bool operator<=(const CnfOrdinal& o) const { return *this == o || *this < o; }

  std::string to_string() const;  // e.g. "w^2*3+w+5" rendered with omega sign

 private:
  // invariant: exponents strictly decreasing, coefficients >= 1
  std::vector<std::pair<std::uint32_t, std::uint64_t>> terms_;
};

}  // namespace setnorm
