#include "setnorm/tsirelson.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace setnorm {

TNormInstance::TNormInstance(Rat th, FamilyPtr fam, std::uint32_t g)
    : theta(std::move(th)), family(std::move(fam)), ground(g) {
  if (!(theta > 0 && theta < 1))
    throw std::invalid_argument("TNormInstance: theta must lie in (0,1)");
  if (!family) throw std::invalid_argument("TNormInstance: null family");
}

std::optional<FinSet> admissible(const std::vector<FinSet>& blocks,
                                 const TNormInstance& inst) {
  if (!is_block(blocks)) throw std::invalid_argument("admissible: invalid blocks");
  if (blocks.empty()) return FinSet{};
  std::size_t d = blocks.size();
  bool prune = inst.family->hereditary_hint();
  std::vector<std::uint32_t> gam;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == d) return inst.family->member(FinSet(gam));
    std::uint32_t lo = i == 0 ? 0 : blocks[i - 1].max() + 1;
    std::uint32_t hi = blocks[i].min();  // gamma_i <= min E_i
    for (std::uint32_t g = lo; g <= hi; ++g) {
      gam.push_back(g);
      bool ok = !prune || inst.family->member(FinSet(gam));
      if (ok && self(self, i + 1)) return true;
      gam.pop_back();
    }
    return false;
  };
  if (rec(rec, 0)) return FinSet(gam);
  return std::nullopt;
}

namespace {

// Norm engine: iterates block-partition suprema over sub-support intervals.
struct Engine {
  const TNormInstance& inst;
  std::vector<std::uint32_t> pos;  // support coordinates
  std::vector<Rat> coef;
  std::size_t m = 0;
  Rat theta;

  // cut tuples in position space for the generic family path
  std::vector<std::vector<std::uint32_t>> tuples;
  bool use_cube = false, use_schreier = false;
  std::uint32_t cube_n = 0;

  std::size_t idx(std::size_t i, std::size_t j) const { return i * (m + 1) + j; }

  Engine(const QVector& x, const TNormInstance& inst_) : inst(inst_) {
    theta = inst.theta;
    for (const auto& [g, c] : x.entries()) {
      if (g >= inst.ground)
        throw std::invalid_argument("t_norm: support outside ground segment");
      pos.push_back(g);
      coef.push_back(c);
    }
    m = pos.size();
    if (inst.family->kind() == Family::Kind::Cube) {
      use_cube = true;
      cube_n = inst.family->cube_n();
    } else if (inst.family->kind() == Family::Kind::Schreier) {
      use_schreier = true;
    } else if (m > 0) {
      std::set<std::vector<std::uint32_t>> uniq;
      for (const auto& s : materialize(*inst.family, inst.ground)) {
        if (s.empty()) continue;
        std::vector<std::uint32_t> q;
        for (std::uint32_t g : s.elems()) {
          auto it = std::lower_bound(pos.begin(), pos.end(), g);
          q.push_back(static_cast<std::uint32_t>(it - pos.begin()));
        }
        q.erase(std::unique(q.begin(), q.end()), q.end());
        if (q.front() >= m) continue;
        uniq.insert(std::move(q));
      }
      tuples.assign(uniq.begin(), uniq.end());
    }
  }

  // Best sum over <= `parts` consecutive blocks (gaps allowed) of V-values
  // inside positions [i,j). With pin_first, the first block starts exactly
  // at first_start.
  Rat chain_split(const std::vector<Rat>& V, std::size_t i, std::size_t j,
                  std::uint32_t parts, std::size_t first_start,
                  bool pin_first) const {
    std::vector<std::vector<Rat>> dp(j - i + 1,
                                     std::vector<Rat>(parts + 1, Rat(0)));
    for (std::size_t q = j; q-- > i;) {
      for (std::uint32_t r = 1; r <= parts; ++r) {
        Rat best = dp[q + 1 - i][r];  // skip position q
        for (std::size_t e = q + 1; e <= j; ++e) {
          Rat cand = V[idx(q, e)] + dp[e - i][r - 1];
          if (cand > best) best = cand;
        }
        dp[q - i][r] = best;
      }
    }
    if (!pin_first) return dp[0][parts];
    Rat best(0);
    for (std::size_t e = first_start + 1; e <= j; ++e) {
      Rat cand = V[idx(first_start, e)] +
                 (parts >= 1 ? dp[e - i][parts - 1] : Rat(0));
      if (cand > best) best = cand;
    }
    return best;
  }

  Rat partition_sup(const std::vector<Rat>& V, std::size_t i, std::size_t j) const {
    Rat best(0);
    if (use_cube) {
      if (cube_n >= 1) best = chain_split(V, i, j, cube_n, 0, false);
    } else if (use_schreier) {
      // admissible iff #blocks <= min E_0: scan the first block's start
      for (std::size_t q0 = i; q0 < j; ++q0) {
        std::uint32_t budget =
            std::min<std::uint32_t>(pos[q0], static_cast<std::uint32_t>(j - q0));
        if (budget == 0) continue;
        Rat cand = chain_split(V, q0, j, budget, q0, true);
        if (cand > best) best = cand;
      }
    } else {
      for (const auto& q : tuples) {
        Rat sum(0);
        for (std::size_t l = 0; l < q.size(); ++l) {
          std::size_t lo = std::max<std::size_t>(q[l], i);
          std::size_t hi = l + 1 < q.size() ? std::min<std::size_t>(q[l + 1], j) : j;
          if (lo < hi) sum += V[idx(lo, hi)];
        }
        if (sum > best) best = sum;
      }
    }
    return best * theta;
  }

  Rat run() {
    if (m == 0) return Rat(0);
    std::vector<Rat> V(idx(m, m) + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      Rat mx(0);
      for (std::size_t j = i; j < m; ++j) {
        Rat a = rat_abs(coef[j]);
        if (a > mx) mx = a;
        V[idx(i, j + 1)] = mx;
      }
    }
    std::size_t cap = m + 2;
    for (std::size_t it = 0;; ++it) {
      if (it > cap)
        throw std::runtime_error(
            "t_norm: iteration cap exceeded without stabilization (supp=" +
            std::to_string(m) + ")");
      std::vector<Rat> next = V;
      bool changed = false;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j <= m; ++j) {
          Rat s = partition_sup(V, i, j);
          if (s > next[idx(i, j)]) {
            next[idx(i, j)] = s;
            changed = true;
          }
        }
      V = std::move(next);
      if (!changed) break;
    }
    return V[idx(0, m)];
  }
};

}  // namespace

Rat t_norm(const QVector& x, const TNormInstance& inst) {
  Engine e(x, inst);
  return e.run();
}

std::pair<Rat, Rat> projection_check(const QVector& x, const TNormInstance& inst,
                                     const FinSet& gamma_set) {
  if (!x.support().subset_of(gamma_set))
    throw std::invalid_argument("projection_check: supp(x) not inside Gamma");
  Rat lhs = t_norm(x, inst);
  std::vector<FinSet> images;
  for (const auto& s : materialize(*inst.family, inst.ground)) {
    if (!s.empty() && s.max() > gamma_set.max()) continue;
    images.push_back(pi_project_set(gamma_set, s));
  }
  TNormInstance proj(inst.theta, Family::explicit_list(images), inst.ground);
  Rat rhs = t_norm(x, proj);
  return {lhs, rhs};
}

std::vector<BellenotRow> bellenot_profile(const TNormInstance& inst,
                                          std::uint32_t m_max) {
  std::vector<BellenotRow> rows;
  for (std::uint32_t m = 1; m <= m_max; ++m) {
    QVector x = QVector::indicator(FinSet::segment(m));
    Rat v = t_norm(x, inst);
    BellenotRow row{m, v, std::nullopt};
    if (v > 1 && m > 1) {
      double nv = std::log(num(v).convert_to<double>() /
                           den(v).convert_to<double>());
      row.p_hat = std::log(static_cast<double>(m)) / nv;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace setnorm
