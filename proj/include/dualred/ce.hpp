#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "dualred/game.hpp"
#include "dualred/lp.hpp"

namespace dualred {

/// A deviation (i, c_i, d_i): player i told to play c_i plays d_i instead.
struct Deviation {
  std::size_t player;
  std::size_t from;
  std::size_t to;
  friend auto operator<=>(const Deviation&, const Deviation&) = default;
};

/// Coefficients over profiles of sum_{c_{-i}} mu(c)[U_i(c_{-i}, d_i) - U_i(c)].
struct IncentiveConstraint {
  Deviation deviation;
  std::vector<Rational> row;
};

/// The correlated equilibrium polytope as an LP region over profile weights.
///
/// Row layout: incentive rows ordered by (player, from, to), including the
/// all-zero rows with from == to; then mu(c) >= 0 for each profile; then the
/// simplex equality. Variables also carry a lower bound of zero.
struct CeSystem {
  LinearProgram region;
  std::vector<IncentiveConstraint> incentives;
  std::vector<std::size_t> player_offset;
  std::vector<std::size_t> action_counts;
  std::size_t nonnegativity_begin = 0;
  std::size_t simplex_row = 0;

  std::size_t incentive_row(const Deviation& d) const;
};

CeSystem ce_system(const Game& game);

/// Row value of a deviation's incentive constraint at mu.
Rational incentive_value(const Game& game, const CorrelatedStrategy& mu,
                         const Deviation& d);

struct CeCheck {
  bool is_equilibrium = false;
  std::vector<Deviation> violated;
};

CeCheck is_correlated_equilibrium(const Game& game, const CorrelatedStrategy& mu);

/// True iff the incentive constraint c_i -> d_i is tight in every CE.
bool jeopardizes(const Game& game, std::size_t player, std::size_t from,
                 std::size_t to);

std::vector<std::vector<std::size_t>> coherent_strategies(const Game& game);

/// Profiles with probability zero in every correlated equilibrium.
std::vector<std::size_t> zero_probability_profiles(const Game& game);

struct ElementaryCheck {
  bool elementary = false;
  Rational slack;                ///< optimal common slack t
  CorrelatedStrategy witness;    ///< strict full-support CE when elementary
};

/// Maximizes t with every nontrivial incentive row <= -t and mu(c) >= t.
ElementaryCheck is_elementary(const Game& game);

bool is_tight(const Game& game);
bool is_pretight(const Game& game);

/// Throws AnalysisError when mu is not a correlated equilibrium.
bool is_strict_ce(const Game& game, const CorrelatedStrategy& mu);

long ce_dimension(const Game& game);

/// jeopardy[i][from * m_i + to] is true iff `to` jeopardizes `from`.
struct JeopardyGraph {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<bool>> edges;

  bool operator()(std::size_t player, std::size_t from, std::size_t to) const {
    return edges[player][from * sizes[player] + to];
  }
  /// Edges with from != to.
  std::vector<Deviation> nontrivial_edges() const;
};

struct CeReport {
  bool is_elementary = false;
  bool is_tight = false;
  bool is_pretight = false;
  long dimension = 0;
  std::vector<std::vector<std::size_t>> coherent;
  std::vector<std::size_t> zero_profiles;
  JeopardyGraph jeopardy;
  /// Relative-interior CE: positive on every profile outside zero_profiles
  /// and strictly slack on every non-jeopardized incentive constraint.
  CorrelatedStrategy witness_ce;
};

/// Full classification from a single implicit-equality pass over the CE
/// polytope.
CeReport analyze_ce(const Game& game);

}  // namespace dualred
