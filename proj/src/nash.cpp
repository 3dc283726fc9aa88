#include "dualred/nash.hpp"

#include <algorithm>
#include <stdexcept>

#include "dualred/errors.hpp"
#include "dualred/linalg.hpp"
#include "dualred/lp.hpp"

namespace dualred {

bool is_nash(const Game& game, const MixedProfile& sigma) {
  require_mixed_profile(game, sigma);
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    std::vector<Rational> u(game.num_actions(i));
    Rational value = 0;
    for (std::size_t a = 0; a < u.size(); ++a) {
      u[a] = payoff_against(game, sigma, i, a);
      value += sigma[i][a] * u[a];
    }
    for (const auto& x : u) {
      if (x > value) return false;
    }
  }
  return true;
}

std::vector<std::size_t> best_responses(const Game& game, std::size_t player,
                                        const MixedProfile& sigma) {
  if (player >= game.num_players()) throw std::out_of_range("player out of range");
  if (sigma.size() != game.num_players()) {
    throw std::invalid_argument("mixed profile has wrong number of players");
  }
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    if (j != player) {
      require_distribution(sigma[j], game.num_actions(j),
                           "mixed strategy of player " + std::to_string(j + 1));
    }
  }
  std::vector<Rational> u(game.num_actions(player));
  for (std::size_t a = 0; a < u.size(); ++a) u[a] = payoff_against(game, sigma, player, a);
  const Rational best = *std::max_element(u.begin(), u.end());
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] == best) out.push_back(a);
  }
  return out;
}

bool is_quasi_strict(const Game& game, const MixedProfile& sigma) {
  if (!is_nash(game, sigma)) throw AnalysisError("profile is not a Nash equilibrium");
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    std::vector<std::size_t> support;
    for (std::size_t a = 0; a < sigma[i].size(); ++a) {
      if (sgn(sigma[i][a]) > 0) support.push_back(a);
    }
    if (best_responses(game, i, sigma) != support) return false;
  }
  return true;
}

bool is_strict_pure_nash(const Game& game, std::size_t profile) {
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t own = game.action_in(profile, i);
    for (std::size_t d = 0; d < game.num_actions(i); ++d) {
      if (d != own && game.payoff(game.with_action(profile, i, d), i) >= game.payoff(profile, i)) {
        return false;
      }
    }
  }
  return true;
}

const char* to_string(NashMethod method) {
  switch (method) {
    case NashMethod::PureEnumeration: return "pure-enumeration";
    case NashMethod::SupportEnumeration: return "support-enumeration";
    case NashMethod::BlockMixed: return "block-mixed";
  }
  return "?";
}

namespace {

MixedProfile pure_profile(const Game& game, std::size_t profile) {
  MixedProfile sigma;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    sigma.push_back(point_mass(game.num_actions(i), game.action_in(profile, i)));
  }
  return sigma;
}

void push_unique(std::vector<MixedProfile>& list, MixedProfile sigma) {
  if (std::find(list.begin(), list.end(), sigma) == list.end()) list.push_back(std::move(sigma));
}

void require_two_players(const Game& game, std::size_t max_actions) {
  if (game.num_players() != 2) throw AnalysisError("analysis needs a two-player game");
  if (game.num_actions(0) > max_actions || game.num_actions(1) > max_actions) {
    throw AnalysisError("game exceeds the size guard of " + std::to_string(max_actions) +
                        " strategies per player");
  }
}

Rational bi_payoff(const Game& game, std::size_t p, std::size_t own, std::size_t other,
                   std::size_t who) {
  Profile c(2);
  c[p] = own;
  c[1 - p] = other;
  return game.payoff(c, who);
}

struct Group {
  std::vector<std::size_t> equal;
  std::vector<std::size_t> below;
};

struct Side {
  MixedStrategy sigma;
  bool unique = false;
};

// Mixed strategy of player p with support exactly `support` such that, for
// each group, the opponent's strategies in `equal` earn a common value and
// those in `below` earn at most that value.
std::optional<Side> solve_side(const Game& game, std::size_t p,
                               const std::vector<std::size_t>& support,
                               const std::vector<Group>& groups) {
  const std::size_t q = 1 - p;
  const std::size_t s = support.size();
  const std::size_t n = s + groups.size() + 1;
  const std::size_t t = n - 1;
  LinearProgram lp(n);
  for (std::size_t k = 0; k < s; ++k) lp.set_lower_bound(k, Rational(0));
  std::vector<Rational> simplex(n, Rational(0));
  for (std::size_t k = 0; k < s; ++k) simplex[k] = 1;
  lp.add_constraint(simplex, Relation::Equal, Rational(1));
  Matrix eq{std::vector<Rational>(simplex.begin(), simplex.end() - 1)};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto row_for = [&](std::size_t other) {
      std::vector<Rational> row(n, Rational(0));
      for (std::size_t k = 0; k < s; ++k) row[k] = bi_payoff(game, p, support[k], other, q);
      row[s + g] = -1;
      return row;
    };
    for (auto o : groups[g].equal) {
      auto row = row_for(o);
      eq.emplace_back(row.begin(), row.end() - 1);
      lp.add_constraint(std::move(row), Relation::Equal, Rational(0));
    }
    for (auto o : groups[g].below) lp.add_constraint(row_for(o), Relation::LessEqual, Rational(0));
  }
  for (std::size_t k = 0; k < s; ++k) {
    std::vector<Rational> row(n, Rational(0));
    row[k] = 1;
    row[t] = -1;
    lp.add_constraint(std::move(row), Relation::GreaterEqual, Rational(0));
  }
  std::vector<Rational> f(n, Rational(0));
  f[t] = 1;
  lp.add_constraint(f, Relation::LessEqual, Rational(1));
  lp.set_objective(std::move(f), Sense::Maximize);
  const auto r = solve(lp);
  if (r.status != LpStatus::Optimal || sgn(r.value) <= 0) return std::nullopt;
  Side out;
  out.sigma.assign(game.num_actions(p), Rational(0));
  for (std::size_t k = 0; k < s; ++k) out.sigma[support[k]] = r.point[k];
  out.unique = rank(std::move(eq)) == n - 1;
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask >> k & 1) s.push_back(k);
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& s, std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < m; ++k) {
    if (!std::binary_search(s.begin(), s.end(), k)) out.push_back(k);
  }
  return out;
}

struct SupportHit {
  std::vector<std::size_t> s1;
  std::vector<std::size_t> s2;
  MixedProfile sigma;
  bool unique = false;
};

// Every support pair admitting a Nash equilibrium with exactly that support.
std::vector<SupportHit> enumerate_supports(const Game& game) {
  const std::size_t m1 = game.num_actions(0);
  const std::size_t m2 = game.num_actions(1);
  std::vector<SupportHit> out;
  const auto all1 = subsets(m1);
  const auto all2 = subsets(m2);
  for (const auto& s1 : all1) {
    for (const auto& s2 : all2) {
      auto x = solve_side(game, 0, s1, {{s2, complement(s2, m2)}});
      if (!x) continue;
      auto y = solve_side(game, 1, s2, {{s1, complement(s1, m1)}});
      if (!y) continue;
      out.push_back({s1, s2, {x->sigma, y->sigma}, x->unique && y->unique});
    }
  }
  return out;
}

// Completely mixed equilibrium of the two-player game restricted to b1 x b2,
// in the coordinates of the full game.
std::optional<MixedProfile> block_mixed(const Game& game, const std::vector<std::size_t>& b1,
                                        const std::vector<std::size_t>& b2) {
  auto x = solve_side(game, 0, b1, {{b2, {}}});
  if (!x) return std::nullopt;
  auto y = solve_side(game, 1, b2, {{b1, {}}});
  if (!y) return std::nullopt;
  return MixedProfile{x->sigma, y->sigma};
}

std::string describe(const Game& game, std::size_t player,
                     const std::vector<std::size_t>& set) {
  std::string s = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) s += ",";
    s += game.label(player, set[k]);
  }
  return s + "}";
}

}  // namespace

NashReport pure_nash(const Game& game) {
  NashReport out;
  out.method = NashMethod::PureEnumeration;
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    bool ok = true;
    for (std::size_t i = 0; i < game.num_players() && ok; ++i) {
      for (std::size_t d = 0; d < game.num_actions(i); ++d) {
        if (game.payoff(game.with_action(c, i, d), i) > game.payoff(c, i)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.equilibria.push_back(pure_profile(game, c));
  }
  return out;
}

NashReport bimatrix_nash(const Game& game, std::size_t max_actions) {
  require_two_players(game, max_actions);
  NashReport out;
  out.method = NashMethod::SupportEnumeration;
  for (auto& hit : enumerate_supports(game)) {
    if (!hit.unique || hit.s1.size() != hit.s2.size()) out.degenerate = true;
    push_unique(out.equilibria, std::move(hit.sigma));
  }
  for (const auto& s : out.equilibria) {
    if (!is_nash(game, s)) throw InternalError("support enumeration produced a non-equilibrium");
  }
  return out;
}

std::vector<MixedProfile> completely_mixed_block_nash(const Game& game, const Block& block) {
  if (game.num_players() != 2) throw AnalysisError("analysis needs a two-player game");
  const Game sub = restrict(game, block);
  std::vector<std::size_t> b1(sub.num_actions(0)), b2(sub.num_actions(1));
  for (std::size_t k = 0; k < b1.size(); ++k) b1[k] = k;
  for (std::size_t k = 0; k < b2.size(); ++k) b2[k] = k;
  auto s = block_mixed(sub, b1, b2);
  if (!s) return {};
  if (!is_nash(sub, *s)) throw InternalError("block equilibrium failed verification");
  return {*s};
}

std::optional<MixedStrategy> weakly_dominated(const Game& game, std::size_t player,
                                              std::size_t action) {
  if (player >= game.num_players() || action >= game.num_actions(player)) {
    throw std::out_of_range("strategy index out of range");
  }
  const std::size_t m = game.num_actions(player);
  std::vector<std::size_t> others;
  for (std::size_t d = 0; d < m; ++d) {
    if (d != action) others.push_back(d);
  }
  if (others.empty()) return std::nullopt;
  LinearProgram lp(others.size());
  for (std::size_t k = 0; k < others.size(); ++k) lp.set_lower_bound(k, Rational(0));
  lp.add_constraint(std::vector<Rational>(others.size(), Rational(1)), Relation::Equal,
                    Rational(1));
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    if (game.action_in(c, player) != action) continue;
    std::vector<Rational> row;
    for (auto d : others) row.push_back(game.payoff(game.with_action(c, player, d), player));
    lp.add_constraint(std::move(row), Relation::GreaterEqual, game.payoff(c, player));
  }
  const auto r = solve(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  MixedStrategy sigma(m, Rational(0));
  for (std::size_t k = 0; k < others.size(); ++k) sigma[others[k]] = r.point[k];
  return sigma;
}

ConditionsReport check_conditions_abc(const Game& game, std::size_t max_actions) {
  require_two_players(game, max_actions);
  ConditionsReport out;
  const std::size_t m1 = game.num_actions(0);
  const std::size_t m2 = game.num_actions(1);

  for (const auto& hit : enumerate_supports(game)) {
    if (hit.s1.size() != hit.s2.size()) {
      out.a = false;
      out.a_example = Counterexample{
          "Nash equilibrium with supports " + describe(game, 0, hit.s1) + " and " +
              describe(game, 1, hit.s2) + " of different sizes",
          hit.sigma, std::nullopt};
      break;
    }
  }

  // A game obtained by deletion violates (a) exactly when some block S1 x S2
  // with |S1| != |S2| has a completely mixed equilibrium.
  const auto all1 = subsets(m1);
  const auto all2 = subsets(m2);
  for (const auto& s1 : all1) {
    for (const auto& s2 : all2) {
      if (s1.size() == s2.size()) continue;
      if (auto s = block_mixed(game, s1, s2)) {
        out.b = false;
        out.b_example = Counterexample{
            "completely mixed equilibrium on " + describe(game, 0, s1) + " x " +
                describe(game, 1, s2),
            *s, Block{{s1, s2}}};
        break;
      }
    }
    if (!out.b) break;
  }

  for (std::size_t i = 0; i < 2 && out.c; ++i) {
    const std::size_t o = 1 - i;
    const auto own = subsets(game.num_actions(i));
    const auto opp = subsets(game.num_actions(o));
    for (const auto& bi : own) {
      if (!out.c) break;
      if (bi.size() < 2) continue;
      for (std::size_t x = 0; x < opp.size() && out.c; ++x) {
        const auto& bo = opp[x];
        if (bo.size() != bi.size()) continue;
        if (!solve_side(game, o, bo, {{bi, {}}})) continue;
        for (std::size_t y = x + 1; y < opp.size(); ++y) {
          const auto& bp = opp[y];
          if (bp.size() != bi.size()) continue;
          std::vector<std::size_t> common;
          std::set_intersection(bo.begin(), bo.end(), bp.begin(), bp.end(),
                                std::back_inserter(common));
          if (!common.empty()) continue;
          if (!solve_side(game, o, bp, {{bi, {}}})) continue;
          auto shared = solve_side(game, i, bi, {{bo, {}}, {bp, {}}});
          if (!shared) continue;
          out.c = false;
          Block block;
          block.sets.resize(2);
          block.sets[i] = bi;
          block.sets[o] = bo;
          MixedProfile sigma(2);
          sigma[i] = shared->sigma;
          sigma[o] = solve_side(game, o, bo, {{bi, {}}})->sigma;
          out.c_example = Counterexample{
              "strategy of player " + std::to_string(i + 1) + " on " +
                  describe(game, i, bi) + " is completely mixed equilibrium play against " +
                  describe(game, o, bo) + " and " + describe(game, o, bp),
              std::move(sigma), std::move(block)};
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace dualred
