// Acceptance suite: one section per shipped guarantee, each printing a single
// PASS/FAIL line. Exit status is the number of failed sections (capped).

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "setnorm/families.hpp"
#include "setnorm/mr.hpp"
#include "setnorm/namba.hpp"
#include "setnorm/positional.hpp"
#include "setnorm/rho.hpp"
#include "setnorm/rng.hpp"
#include "setnorm/tsirelson.hpp"

using namespace setnorm;

namespace {

int g_failures = 0;

struct Section {
  std::string id, title;
  bool ok = true;
  std::vector<std::string> notes;
  std::chrono::steady_clock::time_point start;

  Section(std::string i, std::string t)
      : id(std::move(i)), title(std::move(t)),
        start(std::chrono::steady_clock::now()) {}

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }

  ~Section() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << "[" << id << "] " << (ok ? "PASS" : "FAIL") << " " << title
              << " (" << ms << " ms)\n";
    for (const auto& n : notes) std::cout << "       - " << n << "\n";
    if (!ok) ++g_failures;
  }
};

Rat two_to_minus(int e) { return Rat(1, Int(1) << e); }

double rat_to_double(const Rat& r) {
  return num(r).convert_to<double>() / den(r).convert_to<double>();
}

// --- independent oracles (duplicated here on purpose; they must not share
// --- code paths with the library implementations they check)

bool rho_oracle_valid(const RhoTable& t) {
  std::uint32_t n = t.domain_size();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      for (std::uint32_t c = b + 1; c < n; ++c) {
        std::uint32_t ab = t.get(a, b), ac = t.get(a, c), bc = t.get(b, c);
        if (ab > ac && ab > bc) return false;
        if (ac > ab && ac > bc) return false;
        if (ab == bc) return false;
      }
  for (std::uint32_t b = 0; b < n; ++b)
    for (std::uint32_t a = 0; a < b; ++a)
      for (std::uint32_t a2 = a + 1; a2 < b; ++a2)
        if (t.get(a, b) == t.get(a2, b)) return false;
  return true;
}

bool admissible_brute(const std::vector<FinSet>& blocks,
                      const TNormInstance& inst) {
  if (blocks.empty()) return true;
  std::size_t d = blocks.size();
  std::vector<std::uint32_t> gam(d);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == d) return inst.family->member(FinSet(gam));
    std::uint32_t lo = i == 0 ? 0 : blocks[i - 1].max() + 1;
    std::uint32_t hi = blocks[i].min();
    for (std::uint32_t g = lo; g <= hi; ++g) {
      gam[i] = g;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

Rat brute_t_norm(const QVector& x, const TNormInstance& inst) {
  if (x.empty()) return Rat(0);
  Rat best = x.linf();
  FinSet supp = x.support();
  std::vector<std::vector<std::uint32_t>> blocks;
  auto consider = [&]() {
    if (blocks.empty()) return;
    if (blocks.size() == 1 && blocks[0].size() == supp.size()) return;
    std::vector<FinSet> bs;
    for (const auto& b : blocks) bs.push_back(FinSet(b));
    if (!admissible_brute(bs, inst)) return;
    Rat sum(0);
    for (const auto& b : bs) sum += brute_t_norm(x.restricted(b), inst);
    sum *= inst.theta;
    if (sum > best) best = sum;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == supp.size()) {
      consider();
      return;
    }
    std::uint32_t g = supp[i];
    self(self, i + 1);
    if (!blocks.empty()) {
      blocks.back().push_back(g);
      self(self, i + 1);
      blocks.back().pop_back();
    }
    blocks.push_back({g});
    self(self, i + 1);
    blocks.pop_back();
  };
  rec(rec, 0);
  return best;
}

std::uint64_t chain_rank_oracle(const std::vector<FinSet>& list) {
  std::map<FinSet, std::uint64_t> memo;
  std::set<FinSet> fam(list.begin(), list.end());
  std::set<std::uint32_t> ground;
  for (const auto& s : list)
    for (std::uint32_t g : s.elems()) ground.insert(g);
  auto rk = [&](auto&& self, const FinSet& s) -> std::uint64_t {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    std::uint64_t best = 0;
    for (std::uint32_t g : ground) {
      if (s.contains(g)) continue;
      std::vector<std::uint32_t> v = s.elems();
      v.insert(std::lower_bound(v.begin(), v.end(), g), g);
      FinSet ext(v);
      if (fam.count(ext)) best = std::max(best, self(self, ext) + 1);
    }
    memo[s] = best;
    return best;
  };
  if (fam.empty() || !fam.count(FinSet{})) return 0;
  return rk(rk, FinSet{});
}

QVector random_vector(Rng& rng, std::uint32_t ground, std::size_t max_supp) {
  std::vector<std::pair<std::uint32_t, Rat>> entries;
  std::vector<std::uint32_t> coords;
  for (std::uint32_t g = 0; g < ground; ++g) coords.push_back(g);
  for (std::size_t i = coords.size(); i > 1; --i)
    std::swap(coords[i - 1], coords[rng.below(i)]);
  std::size_t k = 1 + rng.below(max_supp);
  for (std::size_t i = 0; i < k && i < coords.size(); ++i) {
    int numv = static_cast<int>(rng.below(9)) - 4;
    if (numv == 0) numv = 1;
    entries.push_back({coords[i], Rat(numv, 1 + static_cast<int>(rng.below(3)))});
  }
  return QVector(entries);
}

std::vector<FinSet> random_hereditary(Rng& rng, std::uint32_t ground,
                                      int generators) {
  std::vector<FinSet> gens;
  for (int i = 0; i < generators; ++i) gens.push_back(FinSet(rng.subset(ground, 1, 2)));
  auto c = hereditary_closure(gens);
  if (c.empty()) c.push_back(FinSet{});
  return c;
}

}  // namespace

int main() {
  const Rat tol = two_to_minus(40);

  {
    Section s("C1", "conditional-norm witness bounds at k = 2,4,8,16 "
                    "(|x| <= 4, |y| >= k/2, suppression >= k/8, <= 60 s at k=16)");
    for (std::size_t k : {2u, 4u, 8u, 16u}) {
      auto t0 = std::chrono::steady_clock::now();
      MrInstance inst = k == 2 ? MrInstance::bn_stack(build_stack(2, 10, 0), 2)
                               : MrInstance::segment_chain(2, k, Int(2));
      auto w = unconditionality_witness(inst, k, tol);
      double secs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      s.require(w.report.norm_x.hi <= 4,
                "k=" + std::to_string(k) + ": |x| hi exceeds 4");
      s.require(w.report.norm_y.lo >= Rat(Int(k), 2),
                "k=" + std::to_string(k) + ": |y| lo below k/2");
      s.require(w.report.suppression_lower >= Rat(Int(k), 8),
                "k=" + std::to_string(k) + ": suppression bound below k/8");
      s.require(w.report.parts_bounded,
                "k=" + std::to_string(k) + ": bound-chain parts exceed 1/1/2");
      if (k == 16) {
        s.require(secs <= 60.0, "k=16 runtime above 60 s");
        std::ostringstream os;
        os << "k=16 runtime " << secs << " s; |x| <= " << decimal_string(w.report.norm_x.hi)
           << ", |y| >= " << decimal_string(w.report.norm_y.lo);
        s.note(os.str());
      }
    }
  }

  {
    Section s("C2", "weak-null surrogate: |s| in M forces |1_s/sqrt(|s|)| <= 2");
    MrInstance inst = MrInstance::bn_stack(build_stack(2, 10, 0), 2);
    std::size_t checked = 0;
    for (std::uint32_t m : {2u, 8u}) {
      for (const auto& set : subsets_of_size(FinSet::segment(10), m)) {
        MrVector v = MrVector::block(IntervalSet::from_finset(set), Rat(1), Int(m));
        auto e = mr_norm(v, inst, tol);
        if (!(e.hi <= 2)) {
          s.require(false, "bn instance: " + set.to_string() + " exceeds 2");
          break;
        }
        ++checked;
      }
    }
    // sampled interval sets on a chain instance (the ground is too large to
    // enumerate every subset; every block and straddling shift is covered)
    MrInstance big = MrInstance::segment_chain(2, 8, Int(4));
    for (std::size_t i = 0; i < 8; ++i) {
      IntervalSet block = IntervalSet::interval(big.chain()[i], big.chain()[i + 1]);
      IntervalSet shifted = IntervalSet::interval(
          big.chain()[i] + big.weights()[i] / 2,
          big.chain()[i] + big.weights()[i] / 2 + big.weights()[i]);
      for (const auto& set : {block, shifted}) {
        if (set.max() >= big.ground()) continue;
        MrVector v = MrVector::block(set, Rat(1), set.size());
        auto e = mr_norm(v, big, tol);
        if (!(e.hi <= 2))
          s.require(false, "chain instance: a weighted indicator exceeds 2");
        ++checked;
      }
    }
    s.note("checked " + std::to_string(checked) + " indicator vectors (exhaustive on the small instance)");
  }

  {
    Section s("C3", "positional coloring: zero audit violations on 10 stacks "
                    "per depth, identification property exhaustive");
    for (std::uint32_t n = 1; n <= 2; ++n) {
      std::size_t violations = 0;
      std::uint32_t max_k = 0;
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::uint32_t ground = n == 1 ? 12 : 11;
        FiTable fi(build_stack(n, ground, seed));
        AuditResult r = cn_good_coloring_audit(fi, n);
        violations += r.violations.size();
        for (std::uint32_t k : r.equal_color_k) max_k = std::max(max_k, k);
      }
      s.require(violations == 0,
                "depth " + std::to_string(n) + ": " + std::to_string(violations) +
                    " audit violations");
      s.note("depth " + std::to_string(n) +
             ": max observed Delta parameter among equal colors = " +
             std::to_string(max_k) + " (bound 2n-1 = " + std::to_string(2 * n - 1) + ")");
    }
    for (std::uint32_t n = 1; n <= 2; ++n)
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        FiTable fi(build_stack(n, 8, seed));
        s.require(identification_check(fi).empty(),
                  "identification property failed at depth " + std::to_string(n));
      }
  }

  {
    Section s("C4", "rho tables: verifier equals the brute-force oracle on 1000 "
                    "random tables; synthesis matches exhaustive existence");
    Rng rng(2026);
    for (int it = 0; it < 1000; ++it) {
      std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(5));
      std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.below(4));
      RhoTable t(n, m);
      for (std::uint32_t b = 1; b < n; ++b)
        for (std::uint32_t a = 0; a < b; ++a)
          t.set(a, b, static_cast<std::uint32_t>(rng.below(m)));
      if (verify_rho(t).empty() != rho_oracle_valid(t)) {
        s.require(false, "verifier/oracle disagreement");
        break;
      }
    }
    for (std::uint32_t n = 2; n <= 5; ++n)
      for (std::uint32_t m = 1; m <= 4; ++m) {
        bool exists = false;
        std::uint32_t pairs = n * (n - 1) / 2;
        std::uint64_t total = 1;
        for (std::uint32_t i = 0; i < pairs; ++i) total *= m;
        for (std::uint64_t code = 0; code < total && !exists; ++code) {
          RhoTable t(n, m);
          std::uint64_t c = code;
          for (std::uint32_t b = 1; b < n; ++b)
            for (std::uint32_t a = 0; a < b; ++a) {
              t.set(a, b, static_cast<std::uint32_t>(c % m));
              c /= m;
            }
          if (rho_oracle_valid(t)) exists = true;
        }
        auto made = synthesize_rho(n, m);
        s.require(made.has_value() == exists,
                  "synthesis existence mismatch at N=" + std::to_string(n) +
                      " M=" + std::to_string(m));
        if (made) s.require(verify_rho(*made).empty(), "synthesized table invalid");
      }
  }

  {
    Section s("C5", "Tsirelson engine: equals brute force on 500+ vectors, "
                    "1-unconditional, |u3+u4+u5| = 3/2 at theta=1/2 over Schreier");
    Rng rng(31337);
    std::vector<TNormInstance> insts;
    insts.emplace_back(Rat(1, 2), Family::schreier(), 9);
    insts.emplace_back(Rat(1, 2), Family::cube(2), 9);
    insts.emplace_back(Rat(1, 2), Family::cube(3), 9);
    insts.emplace_back(Rat(2, 3), Family::cube(4), 9);
    insts.emplace_back(Rat(1, 3), Family::schreier(), 9);
    int mismatches = 0, checked = 0;
    for (int it = 0; it < 520; ++it) {
      const TNormInstance& inst = insts[it % insts.size()];
      QVector x = random_vector(rng, 9, 6);
      Rat fast = t_norm(x, inst);
      if (fast != brute_t_norm(x, inst)) ++mismatches;
      // 1-unconditionality on a random restriction
      FinSet sub(rng.subset(9, 1, 2));
      if (t_norm(x.restricted(sub), inst) > fast) ++mismatches;
      ++checked;
    }
    s.require(mismatches == 0, std::to_string(mismatches) + " engine/oracle mismatches");
    s.note("checked " + std::to_string(checked) + " random vectors");
    TNormInstance sch(Rat(1, 2), Family::schreier(), 12);
    s.require(t_norm(QVector::indicator(FinSet{3, 4, 5}), sch) == Rat(3, 2),
              "|u3+u4+u5| differs from 3/2");
  }

  {
    Section s("C6", "partial-sum profiles: c0 regime bounded; lp regime "
                    "p_hat(32) in [1.7, 2.0] as stated");
    auto t0 = std::chrono::steady_clock::now();
    TNormInstance c0(Rat(1, 2), Family::cube(2), 34);
    bool bounded = true;
    for (const auto& row : bellenot_profile(c0, 32))
      if (row.norm > 2) bounded = false;
    s.require(bounded, "theta*n = 1: partial-sum norms not bounded by 2");

    TNormInstance lp(Rat(1, 2), Family::cube(4), 34);
    auto rows = bellenot_profile(lp, 32);
    const auto& last = rows.back();
    s.require(last.p_hat.has_value(), "p_hat(32) undefined");
    if (last.p_hat) {
      std::ostringstream os;
      os << "exact |sum u_i| at m=32 is " << rat_string(last.norm) << " = "
         << decimal_string(last.norm) << ", p_hat(32) = " << *last.p_hat
         << " (limit exponent 2; the approach is from above except at powers "
            "of 4, so the stated interval cannot be met: |x_m| <= sqrt(m) "
            "forces p_hat > 2 at every non-square-norm m)";
      s.note(os.str());
      s.require(*last.p_hat >= 1.7 && *last.p_hat <= 2.0,
                "p_hat(32) outside [1.7, 2.0]");
      // the convergence itself, for the record
      auto r16 = rows[15];
      s.note("p_hat(16) = " + std::to_string(r16.p_hat ? *r16.p_hat : 0.0) +
             " (exact at powers of the cube size)");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    s.require(secs <= 120.0, "profile runtime above 120 s");
  }

  {
    Section s("C7", "projection identity: exact equality on 200 random "
                    "(family, Gamma, x) triples");
    Rng rng(777);
    std::vector<TNormInstance> insts;
    insts.emplace_back(Rat(1, 2), Family::schreier(), 12);
    insts.emplace_back(Rat(1, 2), Family::cube(2), 12);
    insts.emplace_back(Rat(2, 5), Family::cube(3), 12);
    int done = 0, bad = 0;
    while (done < 200) {
      FinSet gamma(rng.subset(12, 2, 3));
      if (gamma.size() < 2) continue;
      QVector x = random_vector(rng, 12, 6).restricted(gamma);
      if (x.empty()) continue;
      const TNormInstance& inst = insts[done % insts.size()];
      auto [lhs, rhs] = projection_check(x, inst, gamma);
      if (lhs != rhs) ++bad;
      ++done;
    }
    s.require(bad == 0, std::to_string(bad) + " projection mismatches");
  }

  {
    Section s("C8", "games: determinacy with verified strategies, alpha(cube k) "
                    "= k = rank, monotone sweeps");
    // every hereditary family on a 4-point ground, then random ones up to 8
    auto all4 = all_subsets(FinSet::segment(4));
    int families_checked = 0;
    for (std::uint32_t mask = 1; mask < (1u << all4.size()); ++mask) {
      std::vector<FinSet> fam;
      for (std::uint32_t i = 0; i < all4.size(); ++i)
        if (mask & (1u << i)) fam.push_back(all4[i]);
      bool closed = true;
      for (const auto& x : fam)
        for (const auto& t : all_subsets(x))
          if (std::find(fam.begin(), fam.end(), t) == fam.end()) {
            closed = false;
            break;
          }
      if (!closed) continue;
      auto f = Family::explicit_list(fam);
      for (std::uint32_t n = 1; n <= 3; ++n) {
        GameResult g = solve(f, 8, n);
        if (!strategy_wins_all(f, 8, n, g.strategy)) {
          s.require(false, "strategy replay failed on a downset of [4]");
          break;
        }
      }
      ++families_checked;
    }
    Rng rng(4242);
    for (int it = 0; it < 100; ++it) {
      std::uint32_t ground = 5 + static_cast<std::uint32_t>(rng.below(4));
      auto fam = Family::explicit_list(
          random_hereditary(rng, ground, 1 + static_cast<int>(rng.below(4))));
      for (std::uint32_t n = 1; n <= 3; ++n) {
        GameResult g = solve(fam, 8, n);
        if (!strategy_wins_all(fam, 8, n, g.strategy))
          s.require(false, "strategy replay failed on a random hereditary family");
      }
      if (!monotonicity_check(fam, 8, 4))
        s.require(false, "round monotonicity failed");
      ++families_checked;
    }
    s.note("families checked: " + std::to_string(families_checked) +
           " (every downset of a 4-point ground, plus 100 random up to 8 points)");
    for (std::uint32_t k = 1; k <= 4; ++k) {
      s.require(alpha(Family::cube(k), 12, 6) == k,
                "alpha(cube " + std::to_string(k) + ") != k");
      s.require(cb_rank(*Family::cube(k)) == CnfOrdinal::finite(k),
                "rank(cube " + std::to_string(k) + ") != k");
      s.require(monotonicity_check(Family::cube(k), 12, 6), "cube sweep not monotone");
    }
    s.require(monotonicity_check(Family::schreier(), 14, 6), "schreier sweep not monotone");
  }

  {
    Section s("C9", "rank algebra: product ranks omega and omega^2; explicit "
                    "ranks agree with the chain-rank oracle on 100 families");
    s.require(cb_rank(*Family::product(Family::cube(2), Family::schreier())) ==
                  CnfOrdinal::omega_power(1),
              "rank(cube(2) x schreier) != omega");
    s.require(cb_rank(*Family::product(Family::schreier(), Family::schreier())) ==
                  CnfOrdinal::omega_power(2),
              "rank(schreier x schreier) != omega^2");
    Rng rng(99);
    int agreed = 0;
    for (int it = 0; it < 100; ++it) {
      std::uint32_t g = 3 + static_cast<std::uint32_t>(rng.below(5));
      auto fam = random_hereditary(rng, g, 1 + static_cast<int>(rng.below(4)));
      if (explicit_rank_by_derivatives(fam) != chain_rank_oracle(fam)) {
        s.require(false, "explicit rank disagreement");
        break;
      }
      ++agreed;
    }
    s.note("explicit families checked: " + std::to_string(agreed));
  }

  {
    Section s("C10", "near-scalar functionals: LP optimum with checked duality "
                     "certificate on Schreier windows; exact defeat pair");
    // windows of size >= 2/eps on which the certified optimum drops to eps/2
    struct Goal {
      Rat eps;
      std::uint32_t min_size;
    };
    for (const Goal& goal : {Goal{Rat(1), 2}, Goal{Rat(1, 2), 4}, Goal{Rat(1, 3), 6}}) {
      bool reached = false;
      for (std::uint32_t w = goal.min_size; w <= 160 && !reached; w *= 2) {
        std::vector<std::uint32_t> v;
        for (std::uint32_t x = 1; x <= w; ++x) v.push_back(x);
        FinSet window(v);
        PtakWitness pw = ptak_witness(*Family::schreier(), window);
        if (pw.bound <= goal.eps / 2) {
          reached = true;
          s.require(ptak_certificate_ok(*Family::schreier(), window, pw),
                    "duality certificate failed");
          s.require(window.size() >= goal.min_size, "window smaller than 2/eps");
          s.note("eps = " + rat_string(goal.eps) + ": bound " +
                 rat_string(pw.bound) + " on the initial window of size " +
                 std::to_string(w));
        }
      }
      s.require(reached, "no window within the sweep reached eps/2 for eps = " +
                             rat_string(goal.eps));
    }

    // the defeat pair: |x| <= C/2 against a unit pairing on a spread member
    FinSet window({1, 2, 3, 4});
    PtakWitness pw = ptak_witness(*Family::schreier(), window);
    s.require(pw.bound <= Rat(1, 2), "window {1..4} bound above 1/2");
    QVector x = pw.mu;
    Rat nx = schreier_norm(x, *Family::schreier());
    s.require(nx <= Rat(1, 2), "defeat pair: |x| above C/2 for C = 1");
    std::uint32_t q = static_cast<std::uint32_t>(x.support().size());
    std::vector<std::uint32_t> sv;
    for (std::uint32_t i = 0; i < q; ++i) sv.push_back(q + i);
    FinSet member(sv);
    s.require(Family::schreier()->member(member), "shifted support not a member");
    std::vector<std::pair<std::uint32_t, Rat>> yent;
    for (std::uint32_t i = 0; i < q; ++i)
      yent.push_back({member[i], x.coeff(x.support()[i])});
    QVector y(yent);
    s.require(y.dot_indicator(member) == 1, "unit pairing not exact");
    s.require(schreier_norm(y, *Family::schreier()) >= 1,
              "defeat pair: |y| below 1");
  }

  std::cout << (g_failures ? "ACCEPTANCE: FAILURES PRESENT\n" : "ACCEPTANCE: ALL PASS\n");
  return g_failures ? 1 : 0;
}
