#include "setnorm/qvector.hpp"

#include <algorithm>
#include <stdexcept>

namespace setnorm {

QVector::QVector(std::vector<std::pair<std::uint32_t, Rat>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i - 1].first == entries_[i].first)
      throw std::invalid_argument("QVector: duplicate coordinate");
  std::erase_if(entries_, [](const auto& e) { return e.second == 0; });
}

QVector QVector::indicator(const FinSet& s) {
  std::vector<std::pair<std::uint32_t, Rat>> e;
  e.reserve(s.size());
  for (std::uint32_t g : s.elems()) e.emplace_back(g, Rat(1));
  return QVector(std::move(e));
}

Rat QVector::coeff(std::uint32_t gamma) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), gamma,
      [](const auto& e, std::uint32_t g) { return e.first < g; });
  if (it == entries_.end() || it->first != gamma) return Rat(0);
  return it->second;
}

FinSet QVector::support() const {
  std::vector<std::uint32_t> v;
  v.reserve(entries_.size());
  for (const auto& [g, c] : entries_) v.push_back(g);
  return FinSet(std::move(v));
}

Rat QVector::l1() const {
  Rat s(0);
  for (const auto& [g, c] : entries_) s += rat_abs(c);
  return s;
}

Rat QVector::linf() const {
  Rat m(0);
  for (const auto& [g, c] : entries_) m = std::max(m, rat_abs(c));
  return m;
}

Rat QVector::dot_indicator(const FinSet& s) const {
  Rat acc(0);
  for (const auto& [g, c] : entries_)
    if (s.contains(g)) acc += c;
  return acc;
}

QVector QVector::restricted(const FinSet& to) const {
  std::vector<std::pair<std::uint32_t, Rat>> e;
  for (const auto& [g, c] : entries_)
    if (to.contains(g)) e.emplace_back(g, c);
  return QVector(std::move(e));
}

QVector QVector::operator+(const QVector& o) const {
  std::vector<std::pair<std::uint32_t, Rat>> e;
  std::size_t i = 0, j = 0;
  while (i < entries_.size() || j < o.entries_.size()) {
    if (j == o.entries_.size() ||
        (i < entries_.size() && entries_[i].first < o.entries_[j].first)) {
      e.push_back(entries_[i++]);
    } else if (i == entries_.size() || o.entries_[j].first < entries_[i].first) {
      e.push_back(o.entries_[j++]);
    } else {
      Rat c = entries_[i].second + o.entries_[j].second;
      if (c != 0) e.emplace_back(entries_[i].first, c);
      ++i, ++j;
    }
  }
  QVector r;
  r.entries_ = std::move(e);
  return r;
}

QVector QVector::scaled(const Rat& c) const {
  if (c == 0) return QVector();
  QVector r = *this;
  for (auto& [g, v] : r.entries_) v *= c;
  return r;
}

}  // namespace setnorm
