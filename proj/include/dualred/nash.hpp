#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualred/game.hpp"

namespace dualred {

/// Exact best-response test for every player.
bool is_nash(const Game& game, const MixedProfile& sigma);

/// Pure best responses of `player` to the opponents in `sigma` (sigma[player]
/// is ignored), ties included, ascending.
std::vector<std::size_t> best_responses(const Game& game, std::size_t player,
                                        const MixedProfile& sigma);

/// Best responses equal the support for every player. Throws AnalysisError
/// when sigma is not a Nash equilibrium.
bool is_quasi_strict(const Game& game, const MixedProfile& sigma);

/// True when sigma is a pure profile and every deviation loses strictly.
bool is_strict_pure_nash(const Game& game, std::size_t profile);

enum class NashMethod { PureEnumeration, SupportEnumeration, BlockMixed };

const char* to_string(NashMethod method);

struct NashReport {
  std::vector<MixedProfile> equilibria;
  NashMethod method = NashMethod::PureEnumeration;
  /// Some support pair carried a non-unique solution or unequal support sizes.
  bool degenerate = false;
  bool exact = true;
};

NashReport pure_nash(const Game& game);

/// Support enumeration for two-player games. One equilibrium per support pair
/// that admits an equilibrium with exactly that support; when the solution set
/// of a pair is not a single point a representative is reported and the report
/// is flagged degenerate. Throws AnalysisError beyond max_actions strategies
/// per player or for other than two players.
NashReport bimatrix_nash(const Game& game, std::size_t max_actions = 5);

/// Completely mixed equilibria of restrict(game, block), in the coordinates of
/// the restricted game. Empty when none exists; a single representative when
/// they form a continuum.
std::vector<MixedProfile> completely_mixed_block_nash(const Game& game, const Block& block);

/// A mixed strategy sigma != c_i of player i with U_i(c_{-i}, sigma) >=
/// U_i(c_{-i}, c_i) against every c_{-i}, supported off c_i.
std::optional<MixedStrategy> weakly_dominated(const Game& game, std::size_t player,
                                              std::size_t action);

struct Counterexample {
  std::string description;
  std::optional<MixedProfile> profile;
  std::optional<Block> block;
};

struct ConditionsReport {
  bool a = true;
  bool b = true;
  bool c = true;
  std::optional<Counterexample> a_example;
  std::optional<Counterexample> b_example;
  std::optional<Counterexample> c_example;
};

/// Genericity conditions (a), (b), (c) for two-player games:
///  (a) every Nash equilibrium has supports of equal size;
///  (b) (a) holds after deleting any strategies;
///  (c) no mixed strategy of player i on B_i is the i-component of completely
///      mixed equilibria on B_i x B_{-i} and B_i x B'_{-i} with B_{-i}, B'_{-i}
///      disjoint and all three of the same size >= 2.
/// Throws AnalysisError beyond max_actions strategies per player.
ConditionsReport check_conditions_abc(const Game& game, std::size_t max_actions = 4);

}  // namespace dualred
