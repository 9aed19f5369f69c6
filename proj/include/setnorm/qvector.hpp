#pragma once

#include <cstdint>
#include <vector>

#include "setnorm/finset.hpp"
#include "setnorm/rational.hpp"

namespace setnorm {

/// A finitely supported vector with exact rational entries, indexed by
/// naturals. Entries are kept sorted by coordinate; zeros are dropped.
class QVector {
 public:
  QVector() = default;
  explicit QVector(std::vector<std::pair<std::uint32_t, Rat>> entries);

  static QVector unit(std::uint32_t gamma) { return QVector({{gamma, Rat(1)}}); }
  static QVector indicator(const FinSet& s);

  const std::vector<std::pair<std::uint32_t, Rat>>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }
  Rat coeff(std::uint32_t gamma) const;
  FinSet support() const;

  Rat l1() const;
  Rat linf() const;
  Rat dot_indicator(const FinSet& s) const;  // <x, chi_s>

  QVector restricted(const FinSet& to) const;
  QVector operator+(const QVector& o) const;
  QVector scaled(const Rat& c) const;

 private:
  std::vector<std::pair<std::uint32_t, Rat>> entries_;
};

}  // namespace setnorm
