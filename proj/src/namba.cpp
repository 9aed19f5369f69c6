#include "setnorm/namba.hpp"

#include <algorithm>
#include <stdexcept>

#include "setnorm/tsirelson.hpp"

namespace setnorm {

std::uint32_t Strategy::move(const FinSet& opponent_history) const {
  auto it = table.find(opponent_history);
  if (it == table.end())
    throw std::out_of_range("Strategy::move: history not in table: " +
                            opponent_history.to_string());
  return it->second;
}

namespace {

// The game has 2n-1 plies: Player I at even plies, Player II at odd ones;
// II's final reply is dropped (it cannot affect the outcome).
struct Game {
  const Family& fam;
  std::uint32_t arena;
  std::uint32_t n;
  std::uint32_t plies;
  std::map<std::vector<std::uint32_t>, bool> memo;

  Game(const Family& f, std::uint32_t N, std::uint32_t rounds)
      : fam(f), arena(N), n(rounds), plies(2 * rounds - 1) {
    if (rounds < 1) throw std::invalid_argument("game: need n >= 1");
    if (arena < plies)
      throw std::invalid_argument("game: arena too small for the room rule");
  }

  bool legal(std::uint32_t t, std::int64_t last, std::uint32_t v) const {
    if (static_cast<std::int64_t>(v) <= last) return false;
    return arena - 1 - v >= plies - 1 - t;  // room for the remaining plies
  }

  std::uint32_t cap(std::uint32_t t) const { return arena - 1 - (plies - 1 - t); }

  // true iff Player I wins from this position with optimal play. At Player II
  // plies only the largest legal reply is explored: a larger reply shrinks
  // Player I's remaining options, so it is always optimal for II.
  bool wins_I(std::uint32_t t, std::int64_t last,
              std::vector<std::uint32_t>& picks) {
    if (t == plies) return fam.member(FinSet(picks));
    if (t % 2 == 1) {
      std::uint32_t v = cap(t);
      if (static_cast<std::int64_t>(v) <= last)
        throw std::logic_error("game: position with no legal II move");
      return wins_I(t + 1, v, picks);
    }
    std::vector<std::uint32_t> key;
    key.push_back(t);
    key.push_back(static_cast<std::uint32_t>(last + 1));
    for (std::uint32_t p : picks) key.push_back(p);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool result = false;
    for (std::uint32_t v = static_cast<std::uint32_t>(last + 1); v < arena; ++v) {
      if (!legal(t, last, v)) continue;
      picks.push_back(v);
      bool r = wins_I(t + 1, v, picks);
      picks.pop_back();
      if (r) {
        result = true;
        break;
      }
    }
    memo[key] = result;
    return result;
  }

  // least winning move for the side to move, nullopt if none
  std::optional<std::uint32_t> best_move(std::uint32_t t, std::int64_t last,
                                         std::vector<std::uint32_t>& picks,
                                         bool for_player_I) {
    bool i_to_move = (t % 2 == 0);
    for (std::uint32_t v = static_cast<std::uint32_t>(last + 1); v < arena; ++v) {
      if (!legal(t, last, v)) continue;
      bool r;
      if (i_to_move) {
        picks.push_back(v);
        r = wins_I(t + 1, v, picks);
        picks.pop_back();
      } else {
        r = wins_I(t + 1, v, picks);
      }
      if (r == for_player_I) return v;
    }
    return std::nullopt;
  }
};

void build_table_I(Game& g, Strategy& s, std::uint32_t t, std::int64_t last,
                   std::vector<std::uint32_t>& picks,
                   std::vector<std::uint32_t>& hist_II) {
  if (t == g.plies) return;
  if (t % 2 == 0) {
    auto v = g.best_move(t, last, picks, true);
    if (!v) throw std::logic_error("build_table_I: no winning move");
    s.table.emplace(FinSet(hist_II), *v);
    picks.push_back(*v);
    build_table_I(g, s, t + 1, *v, picks, hist_II);
    picks.pop_back();
  } else {
    for (std::uint32_t v = static_cast<std::uint32_t>(last + 1); v < g.arena; ++v) {
      if (!g.legal(t, last, v)) continue;
      hist_II.push_back(v);
      build_table_I(g, s, t + 1, v, picks, hist_II);
      hist_II.pop_back();
    }
  }
}

void build_table_II(Game& g, Strategy& s, std::uint32_t t, std::int64_t last,
                    std::vector<std::uint32_t>& picks) {
  if (t == g.plies) return;
  if (t % 2 == 0) {
    for (std::uint32_t v = static_cast<std::uint32_t>(last + 1); v < g.arena; ++v) {
      if (!g.legal(t, last, v)) continue;
      picks.push_back(v);
      build_table_II(g, s, t + 1, v, picks);
      picks.pop_back();
    }
  } else {
    auto v = g.best_move(t, last, picks, false);
    if (!v) throw std::logic_error("build_table_II: no winning move");
    s.table.emplace(FinSet(picks), *v);
    build_table_II(g, s, t + 1, *v, picks);
  }
}

}  // namespace

GameResult solve(const FamilyPtr& fam, std::uint32_t arena, std::uint32_t n) {
  Game g(*fam, arena, n);
  std::vector<std::uint32_t> picks;
  bool i_wins = g.wins_I(0, -1, picks);
  GameResult res;
  res.winner = i_wins ? Player::I : Player::II;
  res.strategy.player = res.winner;
  res.strategy.rounds = n;
  if (i_wins) {
    std::vector<std::uint32_t> hist;
    build_table_I(g, res.strategy, 0, -1, picks, hist);
  } else {
    build_table_II(g, res.strategy, 0, -1, picks);
  }
  return res;
}

Player winner_of(const FamilyPtr& fam, std::uint32_t arena, std::uint32_t n) {
  Game g(*fam, arena, n);
  std::vector<std::uint32_t> picks;
  return g.wins_I(0, -1, picks) ? Player::I : Player::II;
}

std::uint32_t alpha(const FamilyPtr& fam, std::uint32_t arena,
                    std::uint32_t n_max) {
  std::uint32_t best = 0;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    if (arena < 2 * n - 1) break;
    if (winner_of(fam, arena, n) == Player::I) best = n;
  }
  return best;
}

bool monotonicity_check(const FamilyPtr& fam, std::uint32_t arena,
                        std::uint32_t n_max) {
  bool seen_ii = false;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    if (arena < 2 * n - 1) break;
    bool i_wins = winner_of(fam, arena, n) == Player::I;
    if (i_wins && seen_ii) return false;
    if (!i_wins) seen_ii = true;
  }
  return true;
}

namespace {

bool replay_all(Game& g, const Strategy& s, std::uint32_t t, std::int64_t last,
                std::vector<std::uint32_t>& picks,
                std::vector<std::uint32_t>& opp_hist) {
  if (t == g.plies) {
    bool member = g.fam.member(FinSet(picks));
    return s.player == Player::I ? member : !member;
  }
  bool strategists_turn = (t % 2 == 0) == (s.player == Player::I);
  if (strategists_turn) {
    std::uint32_t v = s.move(FinSet(opp_hist));
    if (!g.legal(t, last, v)) return false;
    if (s.player == Player::I) {
      picks.push_back(v);
      bool r = replay_all(g, s, t + 1, v, picks, opp_hist);
      picks.pop_back();
      return r;
    }
    return replay_all(g, s, t + 1, v, picks, opp_hist);
  }
  for (std::uint32_t v = static_cast<std::uint32_t>(last + 1); v < g.arena; ++v) {
    if (!g.legal(t, last, v)) continue;
    opp_hist.push_back(v);
    if (s.player == Player::II) picks.push_back(v);
    bool r = replay_all(g, s, t + 1, v, picks, opp_hist);
    if (s.player == Player::II) picks.pop_back();
    opp_hist.pop_back();
    if (!r) return false;
  }
  return true;
}

}  // namespace

bool strategy_wins_all(const FamilyPtr& fam, std::uint32_t arena,
                       std::uint32_t n, const Strategy& s) {
  Game g(*fam, arena, n);
  std::vector<std::uint32_t> picks, hist;
  return replay_all(g, s, 0, -1, picks, hist);
}

FinSet closed_set(const Strategy& s, std::uint32_t arena, std::uint32_t /*n*/,
                  std::size_t target_size, std::uint32_t base) {
  if (base >= arena) throw std::invalid_argument("closed_set: base outside arena");
  std::vector<std::uint32_t> c{base};
  while (c.size() < target_size) {
    std::uint32_t top = c.back();
    std::uint32_t next = top;
    for (const auto& [h, v] : s.table) {
      if (!h.empty() && h.max() > top) continue;
      if (v > next) next = v;
    }
    if (next + 1 >= arena)
      throw std::runtime_error("closed_set: arena exhausted at size " +
                               std::to_string(c.size()));
    c.push_back(next + 1);
  }
  return FinSet(c);
}

namespace {

std::vector<FinSet> project_family_onto(const Family& fam, const FinSet& c,
                                        std::uint32_t arena) {
  std::vector<FinSet> out;
  for (const auto& s : materialize(fam, arena)) {
    if (!s.empty() && s.max() > c.max()) continue;
    out.push_back(pi_project_set(c, s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

LemmaReport lemma_I_check_with(const FamilyPtr& fam, std::uint32_t arena,
                               std::uint32_t n, const Strategy& sigma) {
  LemmaReport rep;
  std::uint32_t first = sigma.move(FinSet{});
  FinSet c;
  try {
    c = closed_set(sigma, arena, n, n + 2, first + 1);
  } catch (const std::exception& e) {
    rep.pass = false;
    rep.violations.push_back(std::string("closure failed: ") + e.what());
    return rep;
  }
  auto proj = project_family_onto(*fam, c, arena);
  auto is_proj_member = [&](const FinSet& s) {
    return std::binary_search(proj.begin(), proj.end(), s);
  };

  // replay the run with II playing the C-predecessors of chosen successors
  std::size_t samples = 0;
  auto idx_sets = n >= 2 ? subsets_of_size(
                               FinSet(std::vector<std::uint32_t>(
                                   [&] {
                                     std::vector<std::uint32_t> v;
                                     for (std::uint32_t i = 1; i < c.size(); ++i)
                                       v.push_back(i);
                                     return v;
                                   }())),
                               n - 1)
                         : std::vector<FinSet>{FinSet{}};
  for (const auto& idx : idx_sets) {
    if (samples >= 20) break;
    ++samples;
    std::vector<std::uint32_t> gammas, deltas;
    for (std::uint32_t i : idx.elems()) {
      gammas.push_back(c[i]);
      deltas.push_back(c[i - 1]);
    }
    std::vector<std::uint32_t> moves_I, hist;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      std::uint32_t v;
      try {
        v = sigma.move(FinSet(hist));
      } catch (const std::exception&) {
        rep.violations.push_back("strategy undefined along the replay");
        ok = false;
        break;
      }
      moves_I.push_back(v);
      if (i + 1 < n) hist.push_back(deltas[i]);
    }
    if (!ok) {
      rep.pass = false;
      continue;
    }
    FinSet s_set;
    try {
      s_set = FinSet(moves_I);
    } catch (const std::exception&) {
      rep.pass = false;
      rep.violations.push_back("replay produced a non-increasing run");
      continue;
    }
    if (!fam->member(s_set)) {
      rep.pass = false;
      rep.violations.push_back("strategy run landed outside the family: " +
                               s_set.to_string());
      continue;
    }
    if (s_set.max() > c.max()) continue;  // projection undefined on this sample
    FinSet image = pi_project_set(c, s_set);
    std::vector<std::uint32_t> expect{c.min()};
    for (std::uint32_t g : gammas) expect.push_back(g);
    if (!(image == FinSet(expect))) {
      rep.pass = false;
      rep.violations.push_back("projected run " + image.to_string() +
                               " differs from {min C} u successors");
    }
    if (!is_proj_member(image)) {
      rep.pass = false;
      rep.violations.push_back("projected run not in the projected family");
    }
  }

  // consequence: short block sequences inside C are admissible
  TNormInstance inst(Rat(1, 2), fam, arena);
  const auto& celems = c.elems();
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (celems.size() < d) break;
    std::vector<FinSet> singles;
    for (std::uint32_t i = 0; i < d; ++i) singles.push_back(FinSet{celems[i]});
    if (!admissible(singles, inst)) {
      rep.pass = false;
      rep.violations.push_back("singleton blocks of length " + std::to_string(d) +
                               " not admissible inside C");
    }
    if (celems.size() >= 2 * static_cast<std::size_t>(d)) {
      std::vector<FinSet> chunks;
      for (std::uint32_t i = 0; i < d; ++i)
        chunks.push_back(FinSet{celems[2 * i], celems[2 * i + 1]});
      if (!admissible(chunks, inst)) {
        rep.pass = false;
        rep.violations.push_back("paired blocks of length " + std::to_string(d) +
                                 " not admissible inside C");
      }
    }
  }
  return rep;
}

LemmaReport lemma_I_check(const FamilyPtr& fam, std::uint32_t arena,
                          std::uint32_t n) {
  GameResult g = solve(fam, arena, n);
  if (g.winner != Player::I) {
    LemmaReport rep;
    rep.pass = false;
    rep.violations.push_back("precondition unmet: Player I does not win");
    return rep;
  }
  return lemma_I_check_with(fam, arena, n, g.strategy);
}

namespace {

// Lazy least-winning strategy for Player II: evaluated only on the histories
// a closure construction actually queries. Histories that cannot arise
// against the strategy are reported as undefined.
struct LazySigmaII {
  Game& g;
  std::map<std::vector<std::uint32_t>, std::optional<std::uint32_t>> memo;

  std::optional<std::uint32_t> value(const std::vector<std::uint32_t>& h) {
    auto it = memo.find(h);
    if (it != memo.end()) return it->second;
    std::optional<std::uint32_t> res = compute(h);
    memo[h] = res;
    return res;
  }

  std::optional<std::uint32_t> compute(const std::vector<std::uint32_t>& h) {
    std::int64_t last = -1;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!g.legal(static_cast<std::uint32_t>(2 * i), last, h[i]))
        return std::nullopt;  // not a legal run
      last = h[i];
      if (i + 1 < h.size()) {
        std::vector<std::uint32_t> pre(h.begin(), h.begin() + i + 1);
        auto eta = value(pre);
        if (!eta) return std::nullopt;
        if (h[i + 1] <= *eta) return std::nullopt;  // inconsistent with sigma
        last = *eta;
        if (h[i + 1] <= last) return std::nullopt;
      }
    }
    std::uint32_t t = static_cast<std::uint32_t>(2 * h.size() - 1);
    if (t >= g.plies) return std::nullopt;
    std::vector<std::uint32_t> picks(h);
    std::int64_t from = h.back();
    for (std::uint32_t v = static_cast<std::uint32_t>(from + 1); v < g.arena; ++v) {
      if (!g.legal(t, from, v)) continue;
      if (!g.wins_I(t + 1, v, picks)) return v;  // least reply keeping II winning
    }
    return std::nullopt;
  }
};

}  // namespace

LemmaReport lemma_II_check(const FamilyPtr& fam, std::uint32_t arena,
                           std::uint32_t n, std::uint32_t rounds) {
  LemmaReport rep;
  Game game(*fam, arena, rounds);
  {
    std::vector<std::uint32_t> picks;
    if (game.wins_I(0, -1, picks)) {
      rep.pass = false;
      rep.violations.push_back("precondition unmet: Player II does not win");
      return rep;
    }
  }
  LazySigmaII sigma{game, {}};
  // greedy strategy-closed set over the lazily evaluated sigma
  FinSet c;
  {
    std::vector<std::uint32_t> cc{0};
    std::size_t target = std::min<std::size_t>(arena / 2, 2 * n + 4);
    bool exhausted = false;
    while (cc.size() < target && !exhausted) {
      std::uint32_t top = cc.back();
      std::uint32_t next = top;
      FinSet below = FinSet::segment(top + 1);
      for (std::uint32_t k = 1; k < rounds && k <= top + 1; ++k)
        for (const auto& h : subsets_of_size(below, k)) {
          auto v = sigma.value(h.elems());
          if (v && *v > next) next = *v;
        }
      if (next + 1 >= arena) {
        exhausted = true;
        break;
      }
      cc.push_back(next + 1);
    }
    if (cc.size() < 2) {
      rep.pass = false;
      rep.violations.push_back("closure failed: arena exhausted at size " +
                               std::to_string(cc.size()));
      return rep;
    }
    c = FinSet(cc);
  }
  auto proj = project_family_onto(*fam, c, arena);

  // spread tuples (consecutive entries separated inside C) avoid the image;
  // possible only when the closure is long enough to host one
  if (c.size() >= 2 * static_cast<std::size_t>(n) - 1) {
    std::vector<std::uint32_t> spread;
    for (std::uint32_t i = 0; i < n; ++i) spread.push_back(c[2 * i]);
    if (std::binary_search(proj.begin(), proj.end(), FinSet(spread))) {
      rep.pass = false;
      rep.violations.push_back("spread tuple lies in the projected family");
    }
  }

  for (const auto& s : proj)
    if (s.size() + 1 >= 2 * static_cast<std::size_t>(n)) {
      rep.pass = false;
      rep.violations.push_back("projected member too large: " + s.to_string());
    }

  // admissible sequences of subsets of C obey the length/width bounds
  TNormInstance inst(Rat(1, 2), fam, arena);
  const auto& celems = c.elems();
  for (std::uint32_t d = 1; d <= 2 * n && d <= celems.size(); ++d) {
    std::vector<FinSet> singles;
    for (std::uint32_t i = 0; i < d; ++i) singles.push_back(FinSet{celems[i]});
    if (admissible(singles, inst) && d + 1 >= 2 * n) {
      rep.pass = false;
      rep.violations.push_back("admissible length " + std::to_string(d) +
                               " >= 2n-1 inside C");
    }
  }
  std::uint32_t wide = 0;
  {
    std::vector<FinSet> pairs;
    for (std::uint32_t i = 0; 2 * i + 1 < celems.size() && pairs.size() < n + 1;
         ++i)
      pairs.push_back(FinSet{celems[2 * i], celems[2 * i + 1]});
    for (std::size_t d = pairs.size(); d >= 1; --d) {
      std::vector<FinSet> pref(pairs.begin(), pairs.begin() + d);
      if (admissible(pref, inst)) {
        wide = static_cast<std::uint32_t>(d);
        break;
      }
    }
  }
  if (wide > n) {
    rep.pass = false;
    rep.violations.push_back("admissible sequence with " + std::to_string(wide) +
                             " wide blocks inside C");
  }
  return rep;
}

}  // namespace setnorm
