#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "dualred/ce.hpp"
#include "dualred/game.hpp"
#include "dualred/lp.hpp"

namespace dualred {

/// Deviation plan of one player: row `from` is the mixed strategy played
/// when `from` is recommended.
class DeviationPlan {
 public:
  /// Identity plan on m strategies.
  explicit DeviationPlan(std::size_t m = 0);
  /// Row-major m x m entries; every row must be a distribution.
  DeviationPlan(std::size_t m, std::vector<Rational> entries);

  static DeviationPlan identity(std::size_t m) { return DeviationPlan(m); }
  /// Every recommendation is replaced by `target`.
  static DeviationPlan constant(const MixedStrategy& target);
  static DeviationPlan from_rows(const std::vector<MixedStrategy>& rows);

  std::size_t size() const { return size_; }
  const Rational& operator()(std::size_t from, std::size_t to) const {
    return entries_[from * size_ + to];
  }
  MixedStrategy image(std::size_t from) const;
  /// alpha * sigma = sum_c sigma(c) (alpha * c).
  MixedStrategy apply(const MixedStrategy& sigma) const;
  bool is_identity() const;
  const std::vector<Rational>& entries() const { return entries_; }

  friend bool operator==(const DeviationPlan&, const DeviationPlan&) = default;

 private:
  std::size_t size_;
  std::vector<Rational> entries_;
};

using DeviationProfile = std::vector<DeviationPlan>;

void require_shape(const Game& game, const DeviationProfile& alpha);

DeviationProfile trivial_dual_vector(const Game& game);

/// Convex combination weight * a + (1 - weight) * b, plan by plan.
DeviationProfile mix(const DeviationProfile& a, const DeviationProfile& b,
                     const Rational& weight);

/// D_i(c, alpha_i) = U_i(c_{-i}, alpha_i * c_i) - U_i(c) and their sum D(c, alpha).
struct DualGainTable {
  std::size_t players = 0;
  std::vector<Rational> per_player;  ///< [profile * players + player]
  std::vector<Rational> total;       ///< [profile]

  const Rational& gain(std::size_t profile, std::size_t player) const {
    return per_player[profile * players + player];
  }
};

DualGainTable gains(const Game& game, const DeviationProfile& alpha);

struct DualCheck {
  bool is_dual_vector = false;
  std::vector<std::size_t> violating;  ///< profiles with D(c, alpha) < 0
};

DualCheck is_dual_vector(const Game& game, const DeviationProfile& alpha);

/// The set of dual vectors as an LP region over all plan entries.
struct DualPolytope {
  LinearProgram region;
  std::vector<std::size_t> offset;  ///< first variable of each player's plan
  std::vector<std::size_t> sizes;
  std::size_t gain_begin = 0;       ///< row index of D(c, alpha) >= 0 for profile 0

  std::size_t var(const Deviation& d) const {
    return offset[d.player] + d.from * sizes[d.player] + d.to;
  }
  DeviationProfile plans(const std::vector<Rational>& point) const;
};

DualPolytope dual_polytope(const Game& game);

/// Triples (i, c_i, d_i) with alpha_i(d_i|c_i) > 0 for some dual vector.
std::vector<Deviation> component_support(const Game& game);

/// Options for the canonical full dual vector. With a seed, the per-triple
/// LPs run in a shuffled order and the maximizers are averaged with random
/// positive weights; the result is still full but generally different.
struct FullDualOptions {
  std::optional<std::uint64_t> seed;
};

/// Average of per-triple maximizers; positive exactly on component_support.
DeviationProfile full_dual_vector(const Game& game, const FullDualOptions& options = {});

/// Maximizes min_{c in Z} D(c, alpha) (capped at 1) over dual vectors, where
/// Z is the set of profiles with probability zero in every CE.
DeviationProfile strong_dual_vector(const Game& game);

/// Half the full dual vector plus half the strong one, verified both ways.
DeviationProfile strong_full_dual_vector(const Game& game,
                                         const FullDualOptions& options = {});

bool is_full(const Game& game, const DeviationProfile& alpha,
             const std::vector<Deviation>& support);
bool is_strong(const Game& game, const DeviationProfile& alpha,
               const std::vector<std::size_t>& zero_profiles);

/// Positive entries of alpha, as sorted triples.
std::vector<Deviation> support_of(const DeviationProfile& alpha);

struct ZeroSumSolution {
  Rational value;            ///< value for player 1
  MixedStrategy row;         ///< optimal strategy of player 1
  MixedStrategy column;      ///< optimal strategy of player 2
};

bool is_zero_sum(const Game& game);

/// Maximin strategies of both players from the value LP.
ZeroSumSolution solve_zero_sum(const Game& game);

/// alpha_i * c_i = opt_i for every c_i. Throws AnalysisError unless the game
/// is two-player zero-sum and both strategies are optimal.
DeviationProfile zero_sum_dual_vector(const Game& game, const MixedStrategy& opt1,
                                      const MixedStrategy& opt2);
DeviationProfile zero_sum_dual_vector(const Game& game);

/// alpha_i^eps * c_i = eps (alpha_i * c_i) + (1 - eps) c_i, for 0 < eps <= 1.
DeviationPlan epsilon_blend(const DeviationPlan& plan, const Rational& eps);

/// Blends plan i with eps_i = min_j a_j / a_i so that the result is a dual
/// vector of rescale(game, r) whenever alpha is one of `game`.
DeviationProfile rescaled_dual_vector(const Game& game, const DeviationProfile& alpha,
                                      const Rescaling& r);

struct RedundancyResult {
  DeviationProfile alpha;
  std::vector<std::vector<std::size_t>> removed;  ///< per player, ascending
};

/// Removes strategies that are payoff-equivalent, for their owner, to a
/// mixture of the remaining strategies.
RedundancyResult redundancy_dual_vector(const Game& game);

/// Averages alpha^p over the closure of `perms`, where alpha^p_{p(i)} = alpha_i.
/// Throws AnalysisError unless the game is symmetric under the closure and
/// alpha is a dual vector.
DeviationProfile symmetrize(const Game& game, const std::vector<PlayerPermutation>& perms,
                            const DeviationProfile& alpha);

}  // namespace dualred
