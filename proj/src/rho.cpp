#include "setnorm/rho.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "setnorm/rng.hpp"

namespace setnorm {

namespace {
std::size_t pair_index(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::size_t>(b) * (b - 1) / 2 + a;
}
}  // namespace

RhoTable::RhoTable(std::uint32_t domain_size, std::uint32_t range_size)
    : n_(domain_size),
      m_(range_size),
      values_(static_cast<std::size_t>(domain_size) * (domain_size ? domain_size - 1 : 0) / 2, 0) {}

std::uint32_t RhoTable::get(std::uint32_t a, std::uint32_t b) const {
  if (!(a < b && b < n_)) throw std::invalid_argument("RhoTable::get: need a < b < N");
  return values_[pair_index(a, b)];
}

void RhoTable::set(std::uint32_t a, std::uint32_t b, std::uint32_t color) {
  if (!(a < b && b < n_)) throw std::invalid_argument("RhoTable::set: need a < b < N");
  if (color >= m_) throw std::invalid_argument("RhoTable::set: color out of range");
  values_[pair_index(a, b)] = color;
}

RhoTable RhoTable::restrict(const FinSet& subset) const {
  if (!subset.empty() && subset.max() >= n_)
    throw std::invalid_argument("RhoTable::restrict: subset exceeds domain");
  RhoTable r(static_cast<std::uint32_t>(subset.size()), m_);
  for (std::uint32_t b = 0; b < subset.size(); ++b)
    for (std::uint32_t a = 0; a < b; ++a) r.set(a, b, get(subset[a], subset[b]));
  return r;
}

std::string RhoViolation::to_string() const {
  const char* k = kind == Kind::A1   ? "a.1"
                  : kind == Kind::A2 ? "a.2"
                  : kind == Kind::B  ? "b"
                                     : "c";
  return std::string("(") + k + ") at (" + std::to_string(x) + "," +
         std::to_string(y) + "," + std::to_string(z) + ")";
}

std::vector<RhoViolation> verify_rho(const RhoTable& t) {
  std::vector<RhoViolation> out;
  std::uint32_t n = t.domain_size();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      for (std::uint32_t c = b + 1; c < n; ++c) {
        std::uint32_t ab = t.get(a, b), ac = t.get(a, c), bc = t.get(b, c);
        if (ab > std::max(ac, bc))
          out.push_back({RhoViolation::Kind::A1, a, b, c});
        if (ac > std::max(ab, bc))
          out.push_back({RhoViolation::Kind::A2, a, b, c});
        if (ab == bc) out.push_back({RhoViolation::Kind::C, a, b, c});
      }
  // (b): for each beta, alpha -> rho(alpha,beta) injective.
  for (std::uint32_t b = 0; b < n; ++b)
    for (std::uint32_t a = 0; a < b; ++a)
      for (std::uint32_t a2 = a + 1; a2 < b; ++a2)
        if (t.get(a, b) == t.get(a2, b))
          out.push_back({RhoViolation::Kind::B, a, a2, b});
  return out;
}

namespace {

// Attempts to fill the table with colors < m, pairs in (beta, alpha) lex
// order, value order given by `order`.
bool backtrack_fill(RhoTable& t, std::uint32_t n,
                    const std::vector<std::uint32_t>& order, std::size_t pos) {
  std::uint32_t total_pairs = n * (n - 1) / 2;
  if (pos == total_pairs) return true;
  // Decode pos -> (beta, alpha) in lex (beta, alpha) order.
  std::uint32_t b = 1;
  std::size_t p = pos;
  while (p >= b) {
    p -= b;
    ++b;
  }
  std::uint32_t a = static_cast<std::uint32_t>(p);

  for (std::uint32_t color : order) {
    bool ok = true;
    // (b): distinct from earlier colors in the same column.
    for (std::uint32_t a2 = 0; a2 < a && ok; ++a2)
      if (t.get(a2, b) == color) ok = false;
    // (c): rho(x,a) != rho(a,b) for x < a, and rho(a,b) != rho(b,y) — the
    // second form involves later pairs, checked when they are placed.
    for (std::uint32_t x = 0; x < a && ok; ++x)
      if (t.get(x, a) == color) ok = false;
    // Subadditivity against completed triples (x < a < b fully placed).
    for (std::uint32_t x = 0; x < a && ok; ++x) {
      std::uint32_t xa = t.get(x, a), xb = t.get(x, b);
      // triple (x, a, b): (a.1) xa <= max(xb, ab); (a.2) xb <= max(xa, ab)
      if (xa > std::max(xb, color)) ok = false;
      if (xb > std::max(xa, color)) ok = false;
    }
    if (!ok) continue;
    t.set(a, b, color);
    if (backtrack_fill(t, n, order, pos + 1)) return true;
  }
  if (total_pairs) t.set(a, b, 0);
  return false;
}

}  // namespace

std::optional<RhoTable> synthesize_rho(std::uint32_t n, std::uint32_t m_max,
                                       std::optional<std::uint64_t> seed) {
  if (n < 1) throw std::invalid_argument("synthesize_rho: n >= 1 required");
  if (n == 1) return RhoTable(1, std::min<std::uint32_t>(m_max, 1));
  // Property (b) forces at least n-1 colors.
  std::uint32_t m_min = n - 1;
  for (std::uint32_t m = m_min; m <= m_max; ++m) {
    if (m == 0) continue;
    RhoTable t(n, m);
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    if (seed) {
      Rng rng(*seed);
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    if (backtrack_fill(t, n, order, 0)) return t;
  }
  return std::nullopt;
}

RhoStack build_stack(std::uint32_t n, std::uint32_t ground_size,
                     std::optional<std::uint64_t> seed) {
  if (n < 1) throw std::invalid_argument("build_stack: n >= 1 required");
  RhoStack st;
  st.depth = n;
  st.ground_size = ground_size;
  std::uint32_t domain = ground_size;
  for (std::uint32_t level = 0; level < n; ++level) {
    std::optional<std::uint64_t> s =
        seed ? std::optional<std::uint64_t>(*seed + 0x9e37 * (level + 1)) : seed;
    auto t = synthesize_rho(std::max<std::uint32_t>(domain, 1), domain, s);
    if (!t)
      throw std::runtime_error("build_stack: synthesis failed at level " +
                               std::to_string(level));
    st.tables.push_back(*t);
    domain = t->range_size();
  }
  return st;
}

}  // namespace setnorm
