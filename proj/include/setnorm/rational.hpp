#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace setnorm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  root = isqrt(n);
  return root * root == n;
}

/// A closed rational interval [lo, hi] used for certified enclosures.
struct QInterval {
  Rat lo, hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rat v) : lo(v), hi(v) {}
  QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("QInterval: lo > hi");
  }

  Rat width() const { return hi - lo; }
  bool is_point() const { return lo == hi; }

  QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  QInterval& operator+=(const QInterval& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }
  QInterval scaled(const Rat& c) const {
    return c >= 0 ? QInterval(lo * c, hi * c) : QInterval(hi * c, lo * c);
  }
  QInterval abs() const {
    if (lo >= 0) return *this;
    if (hi <= 0) return {-hi, -lo};
    Rat m = rat_abs(lo);
    if (hi > m) m = hi;
    return {Rat(0), m};
  }
  static QInterval max(const QInterval& a, const QInterval& b) {
    return {a.lo > b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
  }
};

/// Certified enclosure of sqrt(v) for a rational v >= 0. Width <= 2^-prec_bits
/// relative to scale; exact (point interval) when v is a square of a rational.
inline QInterval sqrt_enclosure(const Rat& v, unsigned prec_bits) {
  if (v < 0) throw std::invalid_argument("sqrt_enclosure of negative");
  if (v == 0) return QInterval(Rat(0));
  Int p = num(v), q = den(v);
  // sqrt(p/q) = sqrt(p*q)/q
  Int pq = p * q;
  Int r;
  if (is_perfect_square(pq, r)) return QInterval(Rat(r, q));
  Int scaled = pq << (2 * prec_bits);
  Int s = isqrt(scaled);  // s <= sqrt(pq)*2^prec < s+1
  Rat denom = Rat(q) * (Int(1) << prec_bits);
  return QInterval(Rat(s) / denom, Rat(s + 1) / denom);
}

/// Enclosure of 1/sqrt(v), v > 0.
inline QInterval inv_sqrt_enclosure(const Rat& v, unsigned prec_bits) {
  if (v <= 0) throw std::invalid_argument("inv_sqrt_enclosure needs v > 0");
  QInterval s = sqrt_enclosure(v, prec_bits + 4);
  return {Rat(1) / s.hi, Rat(1) / s.lo};
}

/// Renders a rational with a fixed number of significant decimal digits,
/// deterministically (round toward zero).
inline std::string decimal_string(const Rat& r, int sig_digits = 12) {
  if (r == 0) return "0";
  std::string sign = r < 0 ? "-" : "";
  Rat a = rat_abs(r);
  int exp10 = 0;
  while (a >= 10) { a /= 10; ++exp10; }
  while (a < 1) { a *= 10; --exp10; }
  Int pow10 = 1;
  for (int i = 0; i < sig_digits - 1; ++i) pow10 *= 10;
  Int digits = Int(a * pow10);  // truncation
  std::string d = digits.str();
  while (d.size() > 1 && d.back() == '0') d.pop_back();
  std::string mant = d.substr(0, 1);
  if (d.size() > 1) mant += "." + d.substr(1);
  if (exp10 == 0) return sign + mant;
  return sign + mant + "e" + std::to_string(exp10);
}

inline std::string rat_string(const Rat& r) {
  std::string s = num(r).str();
  if (den(r) != 1) s += "/" + den(r).str();
  return s;
}

/// Parses "p", "p/q" or a decimal like "0.5".
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(p, q);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Int q = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) q *= 10;
    return Rat(Int(digits), q);
  }
  return Rat(Int(s));
}

}  // namespace setnorm
