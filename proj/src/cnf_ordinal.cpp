#include "setnorm/cnf_ordinal.hpp"

#include <stdexcept>

namespace setnorm {

CnfOrdinal CnfOrdinal::finite(std::uint64_t n) {
  CnfOrdinal o;
  if (n) o.terms_.push_back({0, n});
  return o;
}

CnfOrdinal CnfOrdinal::omega_power(std::uint32_t exp, std::uint64_t coeff) {
  CnfOrdinal o;
  if (coeff) o.terms_.push_back({exp, coeff});
  return o;
}

bool CnfOrdinal::is_finite() const {
  return terms_.empty() || terms_.front().first == 0;
}

std::uint64_t CnfOrdinal::finite_value() const {
  if (terms_.empty()) return 0;
  if (!is_finite()) throw std::logic_error("CnfOrdinal: not finite");
  return terms_.front().second;
}

CnfOrdinal CnfOrdinal::operator+(const CnfOrdinal& o) const {
  if (o.is_zero()) return *this;
  CnfOrdinal r;
  std::uint32_t lead = o.terms_.front().first;
  // terms of *this with exponent < lead are absorbed
  for (const auto& t : terms_)
    if (t.first > lead) r.terms_.push_back(t);
  for (const auto& t : terms_)
    if (t.first == lead) {
      r.terms_.push_back({lead, t.second + o.terms_.front().second});
      for (std::size_t i = 1; i < o.terms_.size(); ++i)
        r.terms_.push_back(o.terms_[i]);
      return r;
    }
  for (const auto& t : o.terms_) r.terms_.push_back(t);
  return r;
}

CnfOrdinal CnfOrdinal::operator*(const CnfOrdinal& o) const {
  if (is_zero() || o.is_zero()) return CnfOrdinal();
  CnfOrdinal acc;
  std::uint32_t lead = terms_.front().first;
  for (const auto& [e, c] : o.terms_) {
    CnfOrdinal part;
    if (e > 0) {
      part.terms_.push_back({static_cast<std::uint32_t>(lead + e), c});
    } else {
      // right factor finite: leading coefficient scales, tail survives once
      part.terms_ = terms_;
      part.terms_.front().second *= c;
    }
    acc = acc + part;
  }
  return acc;
}

bool CnfOrdinal::operator<(const CnfOrdinal& o) const {
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (terms_[i].first != o.terms_[i].first)
      return terms_[i].first < o.terms_[i].first;
    if (terms_[i].second != o.terms_[i].second)
      return terms_[i].second < o.terms_[i].second;
  }
  return terms_.size() < o.terms_.size();
}

std::string CnfOrdinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& [e, c] = terms_[i];
    if (i) s += "+";
    if (e == 0) {
      s += std::to_string(c);
    } else {
      s += "ω";
      if (e > 1) s += "^" + std::to_string(e);
      if (c > 1) s += "·" + std::to_string(c);
    }
  }
  return s;
}

}  // namespace setnorm
