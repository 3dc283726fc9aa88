#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dualred/game.hpp"

namespace dualred {

/// Parses the line-oriented game format:
///
///   # comment
///   game <name>
///   players <n>
///   actions <m_1> ... <m_n>
///   labels <l_1> ... <l_{m_1}>      (optional; one line per player)
///   payoffs
///   <U_1(c)> ... <U_n(c)>            (one row per profile, last player fastest)
///
/// Throws ParseError with line and column on malformed input.
Game parse_game(std::string_view text);

/// Canonical text; parse_game(write_game(g)) == g.
std::string write_game(const Game& game);

/// One line per player, each a whitespace-separated distribution.
MixedProfile parse_mixed_profile(std::string_view text, const Game& game);

/// |C| whitespace-separated rationals in profile order.
CorrelatedStrategy parse_correlated(std::string_view text, const Game& game);

/// Seeded std::mt19937_64; each payoff is lo + (draw mod (hi - lo + 1)),
/// drawn in profile order and, within a profile, player order.
Game gen_game(std::uint64_t seed, const std::vector<std::size_t>& action_counts,
              long lo, long hi);

/// Two players; one draw per profile for player 1, and U_2 = -U_1.
Game gen_zero_sum(std::uint64_t seed, std::size_t m1, std::size_t m2, long lo, long hi);

/// n players with m strategies each, symmetric under the cycle i -> i+1:
/// one draw per profile gives U_1, and U_{k+1}(c) = U_1(c_{k+1}, ..., c_n, c_1, ..., c_k).
/// With two players this is a symmetric bimatrix game.
Game gen_cyclic_symmetric(std::uint64_t seed, std::size_t players, std::size_t m, long lo,
                          long hi);

}  // namespace dualred
