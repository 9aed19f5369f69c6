#include "setnorm/families.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "setnorm/lp.hpp"

namespace setnorm {

FamilyPtr Family::explicit_list(std::vector<FinSet> sets) {
  auto f = std::shared_ptr<Family>(new Family(Kind::Explicit));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  f->sets_ = std::move(sets);
  return f;
}

FamilyPtr Family::cube(std::uint32_t n) {
  auto f = std::shared_ptr<Family>(new Family(Kind::Cube));
  f->param_ = n;
  return f;
}

FamilyPtr Family::schreier() {
  return std::shared_ptr<Family>(new Family(Kind::Schreier));
}

FamilyPtr Family::product(FamilyPtr left, FamilyPtr right) {
  auto f = std::shared_ptr<Family>(new Family(Kind::Product));
  f->left_ = std::move(left);
  f->right_ = std::move(right);
  return f;
}

FamilyPtr Family::hereditary_product(FamilyPtr left, FamilyPtr right,
                                     std::uint32_t ground_bound) {
  auto f = std::shared_ptr<Family>(new Family(Kind::HerProduct));
  f->left_ = std::move(left);
  f->right_ = std::move(right);
  f->param_ = ground_bound;
  return f;
}

FamilyPtr Family::restrict(FamilyPtr child, FinSet gamma) {
  auto f = std::shared_ptr<Family>(new Family(Kind::Restrict));
  f->left_ = std::move(child);
  f->gamma_ = std::move(gamma);
  return f;
}

FamilyPtr Family::projection(FamilyPtr child, FinSet gamma,
                             std::uint32_t ground_bound) {
  auto f = std::shared_ptr<Family>(new Family(Kind::Projection));
  f->left_ = std::move(child);
  f->gamma_ = std::move(gamma);
  f->param_ = ground_bound;
  return f;
}

FamilyPtr Family::homogeneous(
    std::function<std::string(const FinSet&)> coloring, std::uint32_t n_max) {
  auto f = std::shared_ptr<Family>(new Family(Kind::Homogeneous));
  f->coloring_ = std::move(coloring);
  f->hom_nmax_ = n_max;
  return f;
}

bool Family::hereditary_hint() const {
  switch (kind_) {
    case Kind::Explicit: {
      for (const auto& s : sets_)
        if (!s.empty()) {
          for (std::uint32_t drop = 0; drop < s.size(); ++drop) {
            std::vector<std::uint32_t> v;
            for (std::uint32_t i = 0; i < s.size(); ++i)
              if (i != drop) v.push_back(s[i]);
            if (!std::binary_search(sets_.begin(), sets_.end(), FinSet(v)))
              return false;
          }
        }
      return true;
    }
    case Kind::Cube:
    case Kind::Schreier:
    case Kind::HerProduct:
    case Kind::Homogeneous:
      return true;
    case Kind::Product:
      return false;  // not guaranteed by the construction
    case Kind::Restrict:
    case Kind::Projection:
      return left_->hereditary_hint();
  }
  return false;
}

namespace {

// Consecutive-chunk decomposition search for the product family.
bool product_member_rec(const Family& left, const Family& right,
                        const std::vector<std::uint32_t>& elems,
                        std::size_t from, std::vector<std::uint32_t>& mins,
                        bool prune_hereditary) {
  if (from == elems.size()) return right.member(FinSet(mins));
  for (std::size_t to = from + 1; to <= elems.size(); ++to) {
    std::vector<std::uint32_t> chunk(elems.begin() + from, elems.begin() + to);
    if (!left.member(FinSet(chunk))) continue;
    mins.push_back(elems[from]);
    bool prefix_ok =
        !prune_hereditary || right.member(FinSet(mins));
    if (prefix_ok &&
        product_member_rec(left, right, elems, to, mins, prune_hereditary))
      return true;
    mins.pop_back();
  }
  return false;
}

}  // namespace

bool Family::member_uncached(const FinSet& s) const {
  switch (kind_) {
    case Kind::Explicit:
      return std::binary_search(sets_.begin(), sets_.end(), s);
    case Kind::Cube:
      return s.size() <= param_;
    case Kind::Schreier:
      return s.empty() || s.size() <= s.min();
    case Kind::Product: {
      if (s.empty()) return right_->member(FinSet{});
      std::vector<std::uint32_t> mins;
      return product_member_rec(*left_, *right_, s.elems(), 0, mins,
                                right_->hereditary_hint());
    }
    case Kind::HerProduct: {
      FamilyPtr lit = Family::product(left_, right_);
      for (const auto& t : materialize(*lit, param_))
        if (s.subset_of(t)) return true;
      return false;
    }
    case Kind::Restrict:
      return s.subset_of(gamma_) && left_->member(s);
    case Kind::Projection: {
      {
        std::lock_guard<std::mutex> lk(mu_);
        if (!proj_cached_) {
          std::vector<FinSet> images;
          for (const auto& t : materialize(*left_, param_)) {
            if (!t.empty() && t.max() > gamma_.max()) continue;
            images.push_back(pi_project_set(gamma_, t));
          }
          std::sort(images.begin(), images.end());
          images.erase(std::unique(images.begin(), images.end()), images.end());
          proj_cache_ = std::move(images);
          proj_cached_ = true;
        }
      }
      return std::binary_search(proj_cache_.begin(), proj_cache_.end(), s);
    }
    case Kind::Homogeneous: {
      for (std::uint32_t k = 1; k <= std::min<std::uint32_t>(
                                         hom_nmax_,
                                         static_cast<std::uint32_t>(s.size()));
           ++k) {
        auto subs = subsets_of_size(s, k);
        for (std::size_t i = 1; i < subs.size(); ++i)
          if (coloring_(subs[i]) != coloring_(subs[0])) return false;
      }
      return true;
    }
  }
  return false;
}

bool Family::member(const FinSet& s) const {
  if (kind_ == Kind::Cube || kind_ == Kind::Schreier || kind_ == Kind::Explicit)
    return member_uncached(s);  // cheap, no cache needed
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = memo_.find(s.elems());
    if (it != memo_.end()) return it->second;
  }
  bool r = member_uncached(s);
  std::lock_guard<std::mutex> lk(mu_);
  memo_.emplace(s.elems(), r);
  return r;
}

std::string Family::to_string() const {
  switch (kind_) {
    case Kind::Explicit:
      return "explicit[" + std::to_string(sets_.size()) + "]";
    case Kind::Cube:
      return "cube(" + std::to_string(param_) + ")";
    case Kind::Schreier:
      return "schreier";
    case Kind::Product:
      return "product(" + left_->to_string() + "," + right_->to_string() + ")";
    case Kind::HerProduct:
      return "hproduct(" + left_->to_string() + "," + right_->to_string() + ")";
    case Kind::Restrict:
      return "restrict(" + left_->to_string() + "," + gamma_.to_string() + ")";
    case Kind::Projection:
      return "project(" + left_->to_string() + "," + gamma_.to_string() + ")";
    case Kind::Homogeneous:
      return "homogeneous";
  }
  return "?";
}

std::vector<FinSet> hereditary_closure(const std::vector<FinSet>& list) {
  std::set<FinSet> out;
  for (const auto& s : list)
    for (const auto& t : all_subsets(s)) out.insert(t);
  return {out.begin(), out.end()};
}

bool is_large_window(const Family& f, const FinSet& a, std::uint32_t n) {
  for (const auto& s : subsets_of_size(a, n))
    if (f.member(s)) return true;
  return false;
}

std::vector<FinSet> materialize(const Family& f, std::uint32_t ground) {
  if (f.kind() == Family::Kind::Explicit) {
    std::vector<FinSet> out;
    for (const auto& s : f.explicit_sets())
      if (s.empty() || s.max() < ground) out.push_back(s);
    return out;
  }
  if (f.kind() == Family::Kind::Cube) {
    std::vector<FinSet> out;
    for (std::uint32_t k = 0; k <= std::min(f.cube_n(), ground); ++k)
      for (auto& s : subsets_of_size(FinSet::segment(ground), k))
        out.push_back(std::move(s));
    return out;
  }
  if (f.kind() == Family::Kind::Schreier) {
    std::vector<FinSet> out;
    out.push_back(FinSet{});
    for (std::uint32_t m = 1; m < ground; ++m) {
      std::vector<std::uint32_t> above;
      for (std::uint32_t x = m + 1; x < ground; ++x) above.push_back(x);
      FinSet tail(above);
      for (std::uint32_t k = 0; k < m && k <= tail.size(); ++k)
        for (const auto& t : subsets_of_size(tail, k)) {
          std::vector<std::uint32_t> v{m};
          v.insert(v.end(), t.elems().begin(), t.elems().end());
          out.push_back(FinSet(v));
        }
    }
    return out;
  }
  if (ground > 22) throw std::invalid_argument("materialize: ground too large");
  std::vector<FinSet> out;
  for (const auto& s : all_subsets(FinSet::segment(ground)))
    if (f.member(s)) out.push_back(s);
  return out;
}

std::uint32_t pi_project(const FinSet& gamma_set, std::uint32_t x) {
  auto& e = gamma_set.elems();
  auto it = std::lower_bound(e.begin(), e.end(), x);
  if (it == e.end())
    throw std::invalid_argument("pi_project: input above max of Gamma");
  return *it;
}

FinSet pi_project_set(const FinSet& gamma_set, const FinSet& s) {
  std::set<std::uint32_t> img;
  for (std::uint32_t x : s.elems()) img.insert(pi_project(gamma_set, x));
  return FinSet(std::vector<std::uint32_t>(img.begin(), img.end()));
}

std::uint64_t explicit_rank_by_derivatives(const std::vector<FinSet>& list,
                                           std::uint32_t threshold) {
  std::set<FinSet> cur(list.begin(), list.end());
  if (cur.empty()) return 0;
  std::uint64_t rank = 0;
  while (true) {
    // collect the ground actually present
    std::set<std::uint32_t> ground;
    for (const auto& s : cur)
      for (std::uint32_t g : s.elems()) ground.insert(g);
    std::set<FinSet> next;
    for (const auto& s : cur) {
      std::uint32_t count = 0;
      for (std::uint32_t g : ground) {
        if (s.contains(g)) continue;
        std::vector<std::uint32_t> v = s.elems();
        v.insert(std::lower_bound(v.begin(), v.end(), g), g);
        if (cur.count(FinSet(v))) ++count;
      }
      if (count >= threshold) next.insert(s);
    }
    if (next.empty()) return rank;
    cur = std::move(next);
    ++rank;
  }
}

CnfOrdinal cb_rank(const Family& f, std::uint32_t threshold) {
  switch (f.kind()) {
    case Family::Kind::Cube:
      return CnfOrdinal::finite(f.cube_n());
    case Family::Kind::Schreier:
      return CnfOrdinal::omega_power(1);
    case Family::Kind::Product:
    case Family::Kind::HerProduct:
      return cb_rank(*f.left(), threshold) * cb_rank(*f.right(), threshold);
    case Family::Kind::Explicit:
      return CnfOrdinal::finite(
          explicit_rank_by_derivatives(f.explicit_sets(), threshold));
    case Family::Kind::Restrict: {
      const FinSet& g = f.gamma();
      if (g.size() > 20)
        throw std::invalid_argument("cb_rank: restriction window too large");
      std::vector<FinSet> mem;
      for (const auto& s : all_subsets(g))
        if (f.member(s)) mem.push_back(s);
      return CnfOrdinal::finite(explicit_rank_by_derivatives(mem, threshold));
    }
    case Family::Kind::Projection: {
      std::vector<FinSet> mem;
      for (const auto& s : all_subsets(f.gamma()))
        if (f.member(s)) mem.push_back(s);
      return CnfOrdinal::finite(explicit_rank_by_derivatives(mem, threshold));
    }
    case Family::Kind::Homogeneous:
      throw std::invalid_argument(
          "cb_rank: homogeneous family has no ground bound; restrict it to a "
          "window first");
  }
  throw std::logic_error("cb_rank: unhandled descriptor");
}

std::optional<std::uint32_t> ramsey_number(std::uint32_t k, std::uint32_t l,
                                           std::uint32_t m) {
  if (m == 0 || k == 0 || l < k) return std::nullopt;
  for (std::uint32_t n = l;; ++n) {
    auto tuples = subsets_of_size(FinSet::segment(n), k);
    // number of colorings m^|tuples| must stay below 2^24
    long double total = 1;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      total *= m;
      if (total > (1 << 24)) return std::nullopt;
    }
    auto ltuples = subsets_of_size(FinSet::segment(n), l);
    std::uint64_t count = static_cast<std::uint64_t>(total);
    bool all_have_mono = true;
    std::vector<std::uint32_t> color(tuples.size());
    for (std::uint64_t code = 0; code < count && all_have_mono; ++code) {
      std::uint64_t c = code;
      for (auto& x : color) {
        x = static_cast<std::uint32_t>(c % m);
        c /= m;
      }
      bool mono_found = false;
      for (const auto& big : ltuples) {
        std::uint32_t first = 0;
        bool is_mono = true, started = false;
        for (std::size_t ti = 0; ti < tuples.size(); ++ti)
          if (tuples[ti].subset_of(big)) {
            if (!started) {
              first = color[ti];
              started = true;
            } else if (color[ti] != first) {
              is_mono = false;
              break;
            }
          }
        if (is_mono) {
          mono_found = true;
          break;
        }
      }
      if (!mono_found) all_have_mono = false;
    }
    if (all_have_mono) return n;
  }
}

std::optional<FinSet> homogeneous_extract(
    const std::function<std::string(const FinSet&)>& coloring, const FinSet& s,
    std::uint32_t n) {
  if (n == 0) return FinSet{};
  std::uint32_t need = 2 * n - 1;
  if (s.size() < need) return std::nullopt;
  auto prefix_color = [&](const FinSet& t) {
    std::string d;
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> pre(t.elems().begin(), t.elems().begin() + i);
      d += coloring(FinSet(pre)) + "|";
    }
    return d;
  };
  for (const auto& u : subsets_of_size(s, need)) {
    auto nsubs = subsets_of_size(u, n);
    bool mono = true;
    for (std::size_t i = 1; i < nsubs.size() && mono; ++i)
      if (prefix_color(nsubs[i]) != prefix_color(nsubs[0])) mono = false;
    if (!mono) continue;
    std::vector<std::uint32_t> first(u.elems().begin(), u.elems().begin() + n);
    FinSet v(first);
    // recheck homogeneity in every arity <= n
    bool hom = true;
    for (std::uint32_t k = 0; k <= n && hom; ++k) {
      auto subs = subsets_of_size(v, k);
      for (std::size_t i = 1; i < subs.size() && hom; ++i)
        if (coloring(subs[i]) != coloring(subs[0])) hom = false;
    }
    if (hom) return v;
  }
  return std::nullopt;
}

namespace {

struct OracleHit {
  FinSet set;
  Rat value;
};

// Maximal-weight member of f inside `window` for nonnegative weights.
OracleHit family_max_member(const Family& f, const FinSet& window,
                            const std::vector<Rat>& w) {
  auto weight_of = [&](std::size_t idx) { return w[idx]; };
  OracleHit best{FinSet{}, Rat(0)};
  switch (f.kind()) {
    case Family::Kind::Schreier: {
      for (std::size_t i = 0; i < window.size(); ++i) {
        std::uint32_t m = window[i];
        if (m < 1) continue;
        // s = {m} plus up to m-1 heaviest points above m
        std::vector<std::pair<Rat, std::uint32_t>> above;
        for (std::size_t j = i + 1; j < window.size(); ++j)
          above.push_back({w[j], window[j]});
        std::sort(above.begin(), above.end(), [](const auto& a, const auto& b) {
          return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        Rat val = weight_of(i);
        std::vector<std::uint32_t> elems{m};
        for (std::size_t j = 0; j + 1 < m && j < above.size(); ++j) {
          if (above[j].first <= 0) break;
          val += above[j].first;
          elems.push_back(above[j].second);
        }
        std::sort(elems.begin(), elems.end());
        if (val > best.value) best = {FinSet(elems), val};
      }
      return best;
    }
    case Family::Kind::Cube: {
      std::vector<std::pair<Rat, std::uint32_t>> all;
      for (std::size_t i = 0; i < window.size(); ++i)
        all.push_back({w[i], window[i]});
      std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      Rat val(0);
      std::vector<std::uint32_t> elems;
      for (std::size_t j = 0; j < all.size() && j < f.cube_n(); ++j) {
        if (all[j].first <= 0) break;
        val += all[j].first;
        elems.push_back(all[j].second);
      }
      std::sort(elems.begin(), elems.end());
      return {FinSet(elems), val};
    }
    case Family::Kind::Explicit: {
      for (const auto& s : f.explicit_sets()) {
        if (!s.subset_of(window)) continue;
        Rat val(0);
        for (std::uint32_t g : s.elems()) {
          auto it = std::lower_bound(window.elems().begin(),
                                     window.elems().end(), g);
          val += w[static_cast<std::size_t>(it - window.elems().begin())];
        }
        if (val > best.value) best = {s, val};
      }
      return best;
    }
    case Family::Kind::Restrict: {
      FinSet inner = window.set_intersection(f.gamma());
      std::vector<Rat> wi;
      for (std::uint32_t g : inner.elems()) {
        auto it = std::lower_bound(window.elems().begin(), window.elems().end(), g);
        wi.push_back(w[static_cast<std::size_t>(it - window.elems().begin())]);
      }
      return family_max_member(*f.left(), inner, wi);
    }
    default: {
      if (window.size() > 20)
        throw std::invalid_argument("ptak oracle: window too large for generic family");
      for (const auto& s : all_subsets(window)) {
        if (!f.member(s)) continue;
        Rat val(0);
        for (std::uint32_t g : s.elems()) {
          auto it = std::lower_bound(window.elems().begin(), window.elems().end(), g);
          val += w[static_cast<std::size_t>(it - window.elems().begin())];
        }
        if (val > best.value) best = {s, val};
      }
      return best;
    }
  }
}

}  // namespace

PtakWitness ptak_witness(const Family& f, const FinSet& window) {
  if (window.empty()) throw std::invalid_argument("ptak_witness: empty window");
  std::size_t n = window.size();

  // A coordinate covered by no member lets mu concentrate there with bound 0.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> probe(n, Rat(0));
    probe[i] = 1;
    OracleHit h = family_max_member(f, window, probe);
    if (h.value == 0) {
      PtakWitness w;
      w.mu = QVector({{window[i], Rat(1)}});
      w.bound = 0;
      return w;
    }
  }

  // Cutting planes over the packing LP: max sum z, <chi_s, z> <= 1.
  std::vector<FinSet> rows_sets;
  std::set<FinSet> present;
  for (std::uint32_t g : window.elems()) {
    FinSet single{g};
    if (f.member(single)) {
      rows_sets.push_back(single);
      present.insert(single);
    }
  }
  if (rows_sets.empty()) {
    // covered coordinates but no singleton members: seed with best member
    std::vector<Rat> uni(n, Rat(1));
    rows_sets.push_back(family_max_member(f, window, uni).set);
    present.insert(rows_sets.back());
  }

  while (true) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& s : rows_sets) {
      std::vector<Rat> r(n, Rat(0));
      for (std::uint32_t g : s.elems()) {
        auto it = std::lower_bound(window.elems().begin(), window.elems().end(), g);
        r[static_cast<std::size_t>(it - window.elems().begin())] = 1;
      }
      rows.push_back(std::move(r));
    }
    PackingLpResult lp = solve_packing_lp(rows, n);
    if (lp.value <= 0)
      throw std::logic_error("ptak_witness: degenerate LP value");
    Rat bound = Rat(1) / lp.value;
    std::vector<Rat> mu(n);
    for (std::size_t i = 0; i < n; ++i) mu[i] = lp.primal[i] * bound;

    OracleHit h = family_max_member(f, window, mu);
    if (h.value > bound && !present.count(h.set)) {
      rows_sets.push_back(h.set);
      present.insert(h.set);
      continue;
    }

    PtakWitness w;
    std::vector<std::pair<std::uint32_t, Rat>> entries;
    for (std::size_t i = 0; i < n; ++i)
      if (mu[i] != 0) entries.emplace_back(window[i], mu[i]);
    w.mu = QVector(std::move(entries));
    w.bound = bound;
    for (std::size_t i = 0; i < rows_sets.size(); ++i)
      if (lp.dual[i] != 0) w.dual.emplace_back(rows_sets[i], lp.dual[i] * bound);
    return w;
  }
}

bool ptak_certificate_ok(const Family& f, const FinSet& window,
                         const PtakWitness& w) {
  // primal feasibility: probability vector, every member within the window
  // scores at most `bound`
  Rat total(0);
  for (const auto& [g, c] : w.mu.entries()) {
    if (c < 0) return false;
    total += c;
  }
  if (total != 1) return false;
  std::vector<Rat> weights;
  for (std::uint32_t g : window.elems()) weights.push_back(w.mu.coeff(g));
  if (family_max_member(f, window, weights).value > w.bound) return false;
  if (w.bound == 0) return true;

  // dual: a distribution over members covering every coordinate by >= bound
  Rat dtot(0);
  for (const auto& [s, lam] : w.dual) {
    if (lam < 0) return false;
    if (!f.member(s) || !s.subset_of(window)) return false;
    dtot += lam;
  }
  if (dtot != 1) return false;
  for (std::uint32_t g : window.elems()) {
    // only coordinates mu actually uses need covering for optimality of the
    // max, but full coverage certifies global optimality
    Rat cover(0);
    for (const auto& [s, lam] : w.dual)
      if (s.contains(g)) cover += lam;
    if (cover < w.bound) return false;
  }
  return true;
}

Rat schreier_norm(const QVector& x, const Family& f) {
  if (x.empty()) return Rat(0);
  FinSet supp = x.support();
  auto one_side = [&](bool positive) {
    std::vector<Rat> w;
    for (std::uint32_t g : supp.elems()) {
      Rat c = x.coeff(g);
      if (!positive) c = -c;
      w.push_back(c > 0 ? c : Rat(0));
    }
    return family_max_member(f, supp, w).value;
  };
  if (f.hereditary_hint()) return std::max(one_side(true), one_side(false));
  // literal maximization over members within the support bound
  Rat best(0);
  for (const auto& s : materialize(f, supp.max() + 1))
    best = std::max(best, rat_abs(x.dot_indicator(s)));
  return best;
}

bool theta_free_check(const std::function<FinSet(const FinSet&)>& theta,
                      const FinSet& s) {
  for (const auto& t : all_subsets(s))
    if (!theta(t).set_intersection(s).subset_of(t)) return false;
  return true;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  const std::function<std::vector<FinSet>(const std::string&)>& loader;

  void skip_ws() {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw std::invalid_argument(std::string("descriptor parse: expected '") +
                                  c + "' at position " + std::to_string(pos));
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '.' || text[pos] == '@' || text[pos] == '/' ||
            text[pos] == '-' || text[pos] == ':'))
      ++pos;
    return text.substr(start, pos - start);
  }
  std::uint32_t number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("descriptor parse: number expected");
    return static_cast<std::uint32_t>(std::stoul(text.substr(start, pos - start)));
  }
  FinSet finset() {
    expect('[');
    std::vector<std::uint32_t> v;
    skip_ws();
    if (!eat(']')) {
      while (true) {
        v.push_back(number());
        if (eat(']')) break;
        expect(',');
      }
    }
    std::sort(v.begin(), v.end());
    return FinSet(v);
  }
  FamilyPtr family() {
    skip_ws();
    std::string name = ident();
    if (name == "schreier") return Family::schreier();
    if (name == "cube") {
      expect('(');
      std::uint32_t n = number();
      expect(')');
      return Family::cube(n);
    }
    if (name == "product" || name == "hproduct") {
      expect('(');
      FamilyPtr l = family();
      expect(',');
      FamilyPtr r = family();
      if (name == "hproduct") {
        expect(',');
        std::uint32_t g = number();
        expect(')');
        return Family::hereditary_product(l, r, g);
      }
      expect(')');
      return Family::product(l, r);
    }
    if (name == "restrict") {
      expect('(');
      FamilyPtr c = family();
      expect(',');
      FinSet g = finset();
      expect(')');
      return Family::restrict(c, g);
    }
    if (name == "project") {
      expect('(');
      FamilyPtr c = family();
      expect(',');
      FinSet g = finset();
      expect(')');
      std::uint32_t bound = g.empty() ? 0 : g.max() + 1;
      return Family::projection(c, g, bound);
    }
    if (name.rfind("explicit:", 0) == 0) {
      std::string ref = name.substr(9);
      if (ref.empty() || ref[0] != '@')
        throw std::invalid_argument("descriptor parse: explicit:@file expected");
      if (!loader) throw std::invalid_argument("descriptor parse: no file loader");
      return Family::explicit_list(loader(ref.substr(1)));
    }
    throw std::invalid_argument("descriptor parse: unknown family '" + name + "'");
  }
};

}  // namespace

FamilyPtr parse_descriptor(
    const std::string& text,
    const std::function<std::vector<FinSet>(const std::string&)>& file_loader) {
  Parser p{text, 0, file_loader};
  FamilyPtr f = p.family();
  p.skip_ws();
  if (p.pos != text.size())
    throw std::invalid_argument("descriptor parse: trailing input");
  return f;
}

}  // namespace setnorm
