#include "dualred/ce.hpp"

#include <algorithm>

#include "dualred/errors.hpp"
#include "dualred/linalg.hpp"

namespace dualred {

std::size_t CeSystem::incentive_row(const Deviation& d) const {
  return player_offset.at(d.player) + d.from * action_counts[d.player] + d.to;
}

CeSystem ce_system(const Game& game) {
  const std::size_t n = game.num_profiles();
  CeSystem sys;
  sys.region = LinearProgram(n);
  sys.action_counts = game.action_counts();
  for (std::size_t c = 0; c < n; ++c) {
    sys.region.set_name(c, "mu" + std::to_string(c));
    sys.region.set_lower_bound(c, Rational(0));
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    sys.player_offset.push_back(sys.incentives.size());
    const std::size_t m = game.num_actions(i);
    for (std::size_t from = 0; from < m; ++from) {
      for (std::size_t to = 0; to < m; ++to) {
        std::vector<Rational> row(n, Rational(0));
        if (from != to) {
          for (std::size_t c = 0; c < n; ++c) {
            if (game.action_in(c, i) != from) continue;
            row[c] = game.payoff(game.with_action(c, i, to), i) - game.payoff(c, i);
          }
        }
        sys.region.add_constraint(row, Relation::LessEqual, Rational(0));
        sys.incentives.push_back({{i, from, to}, std::move(row)});
      }
    }
  }
  sys.nonnegativity_begin = sys.region.num_constraints();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rational> e(n, Rational(0));
    e[c] = 1;
    sys.region.add_constraint(std::move(e), Relation::GreaterEqual, Rational(0));
  }
  sys.simplex_row = sys.region.add_constraint(std::vector<Rational>(n, Rational(1)),
                                              Relation::Equal, Rational(1));
  return sys;
}

Rational incentive_value(const Game& game, const CorrelatedStrategy& mu,
                         const Deviation& d) {
  Rational total = 0;
  if (d.from == d.to) return total;
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    if (game.action_in(c, d.player) != d.from || sgn(mu[c]) == 0) continue;
    total += mu[c] * (game.payoff(game.with_action(c, d.player, d.to), d.player) -
                      game.payoff(c, d.player));
  }
  return total;
}

CeCheck is_correlated_equilibrium(const Game& game, const CorrelatedStrategy& mu) {
  require_correlated(game, mu);
  CeCheck out;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t from = 0; from < game.num_actions(i); ++from) {
      for (std::size_t to = 0; to < game.num_actions(i); ++to) {
        const Deviation d{i, from, to};
        if (sgn(incentive_value(game, mu, d)) > 0) out.violated.push_back(d);
      }
    }
  }
  out.is_equilibrium = out.violated.empty();
  return out;
}

namespace {

LpOutcome optimize_over(const CeSystem& sys, std::vector<Rational> objective,
                        Sense sense) {
  LinearProgram lp = sys.region;
  lp.set_objective(std::move(objective), sense);
  auto r = solve(lp);
  if (r.status != LpStatus::Optimal) {
    throw InternalError("optimization over the CE polytope did not reach an optimum");
  }
  return r;
}

void require_strategy(const Game& game, std::size_t player, std::size_t s) {
  if (player >= game.num_players() || s >= game.num_actions(player)) {
    throw std::out_of_range("strategy index out of range");
  }
}

}  // namespace

bool jeopardizes(const Game& game, std::size_t player, std::size_t from,
                 std::size_t to) {
  require_strategy(game, player, from);
  require_strategy(game, player, to);
  if (from == to) return true;
  const auto sys = ce_system(game);
  const auto& row = sys.incentives[sys.incentive_row({player, from, to})].row;
  return sgn(optimize_over(sys, row, Sense::Minimize).value) == 0;
}

std::vector<std::vector<std::size_t>> coherent_strategies(const Game& game) {
  const auto sys = ce_system(game);
  std::vector<CorrelatedStrategy> seen;
  std::vector<std::vector<std::size_t>> out(game.num_players());
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t s = 0; s < game.num_actions(i); ++s) {
      auto marginal = [&](const CorrelatedStrategy& mu) {
        Rational m = 0;
        for (std::size_t c = 0; c < mu.size(); ++c) {
          if (game.action_in(c, i) == s) m += mu[c];
        }
        return m;
      };
      bool positive = std::any_of(seen.begin(), seen.end(), [&](const auto& mu) {
        return sgn(marginal(mu)) > 0;
      });
      if (!positive) {
        std::vector<Rational> f(game.num_profiles(), Rational(0));
        for (std::size_t c = 0; c < f.size(); ++c) {
          if (game.action_in(c, i) == s) f[c] = 1;
        }
        auto r = optimize_over(sys, std::move(f), Sense::Maximize);
        positive = sgn(r.value) > 0;
        seen.push_back(std::move(r.point));
      }
      if (positive) out[i].push_back(s);
    }
  }
  return out;
}

std::vector<std::size_t> zero_probability_profiles(const Game& game) {
  const auto sys = ce_system(game);
  std::vector<CorrelatedStrategy> seen;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    const bool positive = std::any_of(seen.begin(), seen.end(),
                                      [&](const auto& mu) { return sgn(mu[c]) > 0; });
    if (positive) continue;
    std::vector<Rational> f(game.num_profiles(), Rational(0));
    f[c] = 1;
    auto r = optimize_over(sys, std::move(f), Sense::Maximize);
    if (sgn(r.value) == 0) out.push_back(c);
    seen.push_back(std::move(r.point));
  }
  return out;
}

ElementaryCheck is_elementary(const Game& game) {
  const auto sys = ce_system(game);
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < sys.incentives.size(); ++k) {
    const auto& d = sys.incentives[k].deviation;
    if (d.from != d.to) rows.push_back(k);
  }
  for (std::size_t k = sys.nonnegativity_begin; k < sys.simplex_row; ++k) rows.push_back(k);
  const auto r = max_min_slack(sys.region, rows, Rational(1));
  if (r.status != LpStatus::Optimal) throw InternalError("elementarity LP is unbounded");
  ElementaryCheck out;
  out.slack = r.t;
  out.elementary = sgn(r.t) > 0;
  out.witness = r.point;
  return out;
}

bool is_tight(const Game& game) {
  return analyze_ce(game).is_tight;
}

bool is_pretight(const Game& game) {
  return analyze_ce(game).is_pretight;
}

bool is_strict_ce(const Game& game, const CorrelatedStrategy& mu) {
  if (!is_correlated_equilibrium(game, mu).is_equilibrium) {
    throw AnalysisError("not a correlated equilibrium");
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t from = 0; from < game.num_actions(i); ++from) {
      Rational marginal = 0;
      for (std::size_t c = 0; c < mu.size(); ++c) {
        if (game.action_in(c, i) == from) marginal += mu[c];
      }
      if (sgn(marginal) == 0) continue;
      for (std::size_t to = 0; to < game.num_actions(i); ++to) {
        if (to != from && sgn(incentive_value(game, mu, {i, from, to})) >= 0) return false;
      }
    }
  }
  return true;
}

long ce_dimension(const Game& game) {
  return affine_dimension(ce_system(game).region);
}

std::vector<Deviation> JeopardyGraph::nontrivial_edges() const {
  std::vector<Deviation> out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (std::size_t from = 0; from < sizes[i]; ++from) {
      for (std::size_t to = 0; to < sizes[i]; ++to) {
        if (from != to && (*this)(i, from, to)) out.push_back({i, from, to});
      }
    }
  }
  return out;
}

CeReport analyze_ce(const Game& game) {
  const auto sys = ce_system(game);
  const auto eq = implicit_equalities(sys.region);

  CeReport report;
  std::vector<bool> implicit(sys.region.num_constraints(), false);
  for (auto k : eq.rows) implicit[k] = true;

  report.jeopardy.sizes = game.action_counts();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t m = game.num_actions(i);
    std::vector<bool> edges(m * m);
    for (std::size_t k = 0; k < m * m; ++k) edges[k] = implicit[sys.player_offset[i] + k];
    report.jeopardy.edges.push_back(std::move(edges));
  }
  std::vector<bool> zero(game.num_profiles(), false);
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    if (implicit[sys.nonnegativity_begin + c]) {
      zero[c] = true;
      report.zero_profiles.push_back(c);
    }
  }
  report.coherent.resize(game.num_players());
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t s = 0; s < game.num_actions(i); ++s) {
      for (std::size_t c = 0; c < game.num_profiles(); ++c) {
        if (game.action_in(c, i) == s && !zero[c]) {
          report.coherent[i].push_back(s);
          break;
        }
      }
    }
  }

  report.is_tight = true;
  report.is_pretight = true;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto& coherent = report.coherent[i];
    for (std::size_t from = 0; from < game.num_actions(i); ++from) {
      for (std::size_t to = 0; to < game.num_actions(i); ++to) {
        if (report.jeopardy(i, from, to)) continue;
        report.is_tight = false;
        if (std::binary_search(coherent.begin(), coherent.end(), from) &&
            std::binary_search(coherent.begin(), coherent.end(), to)) {
          report.is_pretight = false;
        }
      }
    }
  }
  report.is_elementary =
      report.zero_profiles.empty() && report.jeopardy.nontrivial_edges().empty();

  Matrix rows{sys.region.constraint(sys.simplex_row).coeffs};
  for (auto k : eq.rows) rows.push_back(sys.region.constraint(k).coeffs);
  report.dimension = static_cast<long>(game.num_profiles()) -
                     static_cast<long>(rank(std::move(rows)));
  report.witness_ce = eq.interior;
  return report;
}

}  // namespace dualred
