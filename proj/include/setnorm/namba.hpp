#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setnorm/families.hpp"
#include "setnorm/finset.hpp"

namespace setnorm {

enum class Player { I, II };

/// A positional strategy: maps the opponent's moves so far to the next move.
/// For Player I the keys have sizes 0..n-1, for Player II sizes 1..n-1
/// (the final reply of II never affects the outcome and is omitted).
struct Strategy {
  Player player = Player::I;
  std::uint32_t rounds = 0;
  std::map<FinSet, std::uint32_t> table;

  std::uint32_t move(const FinSet& opponent_history) const;
};

/// The finite (B,n)-game on the arena {0,...,N-1}: players alternate
/// strictly increasing picks gamma_0 < eta_0 < gamma_1 < ..., Player I wins
/// iff {gamma_i}_{i<n} lands in the family. Room rule: a move is legal only
/// if enough ordinals remain above it for the rest of the game (the finite
/// surrogate of an unbounded arena). Player II's final reply is dropped.
struct GameResult {
  Player winner;
  Strategy strategy;  // a winning strategy for the winner
};

/// Backward-induction solve with explicit strategy extraction. Deterministic:
/// the strategy always takes the least winning move; its table covers every
/// legal opponent line, so it is only feasible on small arenas. Throws if the
/// arena is too small for n rounds.
GameResult solve(const FamilyPtr& fam, std::uint32_t arena, std::uint32_t n);

/// Winner only. Evaluation branches solely over Player I's picks: Player II's
/// optimal reply is always the largest room-legal value (a larger reply only
/// shrinks Player I's later options), so this stays fast on large arenas.
Player winner_of(const FamilyPtr& fam, std::uint32_t arena, std::uint32_t n);

/// Largest n <= n_max for which Player I wins on this arena.
std::uint32_t alpha(const FamilyPtr& fam, std::uint32_t arena,
                    std::uint32_t n_max);

/// Checks round-monotonicity on the sweep 1..n_max: Player I's wins form a
/// prefix and Player II's wins a suffix.
bool monotonicity_check(const FamilyPtr& fam, std::uint32_t arena,
                        std::uint32_t n_max);

/// Replays `s` against every legal opponent line; true iff it wins them all.
bool strategy_wins_all(const FamilyPtr& fam, std::uint32_t arena,
                       std::uint32_t n, const Strategy& s);

/// Greedy strategy-closed set: starting from `base`, each next point exceeds
/// every strategy value on histories drawn below the previous point.
/// Throws if the arena is exhausted before reaching target_size.
FinSet closed_set(const Strategy& s, std::uint32_t arena, std::uint32_t n,
                  std::size_t target_size, std::uint32_t base = 0);

struct LemmaReport {
  bool pass = true;
  std::vector<std::string> violations;
};

/// Player-I lemma: with a winning strategy and a strategy-closed C above
/// sigma(empty), the run against II playing predecessors of chosen successor
/// elements lands {min C, gamma_1, ..., gamma_{n-1}} in the projection of
/// the family onto C; consequently short block sequences inside C are
/// admissible. Checks both on samples.
LemmaReport lemma_I_check(const FamilyPtr& fam, std::uint32_t arena,
                          std::uint32_t n);

/// Player-II lemma: with a winning strategy for II and a strategy-closed C,
/// spread-out n-tuples of C avoid the projection, the projection's members
/// have size < 2n-1, and admissible sequences inside C obey the length and
/// width bounds. `rounds` lets the game height used for the closure differ
/// from the tuple length n (both readings of the round count can be run).
LemmaReport lemma_II_check(const FamilyPtr& fam, std::uint32_t arena,
                           std::uint32_t n, std::uint32_t rounds);

/// Runs lemma_I_check against an arbitrary (typically non-winning) strategy;
/// used as a negative control.
LemmaReport lemma_I_check_with(const FamilyPtr& fam, std::uint32_t arena,
                               std::uint32_t n, const Strategy& sigma);

}  // namespace setnorm
