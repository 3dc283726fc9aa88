#include "dualred/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "dualred/ce.hpp"
#include "dualred/errors.hpp"
#include "dualred/linalg.hpp"
#include "dualred/nash.hpp"

namespace dualred {

MarkovDecomposition markov_decompose(const DeviationPlan& plan) {
  const std::size_t m = plan.size();
  // reach[a][b]: b reachable from a in zero or more steps.
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::size_t> stack{a};
    reach[a][a] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < m; ++v) {
        if (sgn(plan(u, v)) > 0 && !reach[a][v]) {
          reach[a][v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  MarkovDecomposition out;
  std::vector<bool> placed(m, false);
  for (std::size_t a = 0; a < m; ++a) {
    if (placed[a]) continue;
    bool closed = true;
    std::vector<std::size_t> members;
    for (std::size_t b = 0; b < m; ++b) {
      if (!reach[a][b]) continue;
      if (reach[b][a]) {
        members.push_back(b);
      } else {
        closed = false;
      }
    }
    if (!closed) {
      out.transient.push_back(a);
      placed[a] = true;
      continue;
    }
    for (auto b : members) placed[b] = true;
    const std::size_t k = members.size();
    Matrix eqs;
    std::vector<Rational> rhs;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Rational> row(k);
      for (std::size_t l = 0; l < k; ++l) {
        row[l] = plan(members[l], members[j]) - (l == j ? 1 : 0);
      }
      eqs.push_back(std::move(row));
      rhs.emplace_back(0);
    }
    eqs.emplace_back(k, Rational(1));
    rhs.emplace_back(1);
    auto x = solve_unique(std::move(eqs), std::move(rhs));
    if (!x) throw InternalError("stationary system of an absorbing class is singular");
    MixedStrategy sigma(m, Rational(0));
    for (std::size_t l = 0; l < k; ++l) {
      if (sgn((*x)[l]) <= 0) throw InternalError("stationary strategy misses a class member");
      sigma[members[l]] = (*x)[l];
    }
    out.classes.push_back(std::move(members));
    out.stationary.push_back(std::move(sigma));
  }
  std::sort(out.transient.begin(), out.transient.end());
  return out;
}

const char* to_string(StrategyStatus status) {
  switch (status) {
    case StrategyStatus::Eliminated: return "eliminated";
    case StrategyStatus::Kept: return "kept";
    case StrategyStatus::Grouped: return "grouped";
  }
  return "?";
}

namespace {

std::string class_label(const Game& game, std::size_t player,
                        const std::vector<std::size_t>& members, const MixedStrategy& sigma) {
  if (members.size() == 1) return game.label(player, members.front());
  std::string s = "(";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) s += "+";
    s += game.label(player, members[k]) + "*" + to_string(sigma[members[k]]);
  }
  return s + ")";
}

}  // namespace

ReducedGame reduce(const Game& game, const DeviationProfile& alpha) {
  require_shape(game, alpha);
  if (!is_dual_vector(game, alpha).is_dual_vector) {
    throw AnalysisError("deviation profile is not a dual vector of game '" + game.name() + "'");
  }
  const std::size_t n = game.num_players();
  std::vector<MarkovDecomposition> parts;
  std::vector<std::vector<std::string>> labels(n);
  std::vector<std::vector<MixedStrategy>> actions(n);
  std::vector<std::vector<StrategyClass>> classification(n);
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(markov_decompose(alpha[i]));
    const auto& part = parts.back();
    classification[i].resize(game.num_actions(i));
    for (std::size_t k = 0; k < part.classes.size(); ++k) {
      const auto& members = part.classes[k];
      labels[i].push_back(class_label(game, i, members, part.stationary[k]));
      actions[i].push_back(part.stationary[k]);
      for (auto s : members) {
        classification[i][s] = {members.size() == 1 ? StrategyStatus::Kept
                                                    : StrategyStatus::Grouped,
                                k};
      }
    }
  }
  std::vector<std::size_t> counts(n);
  std::size_t profiles = 1;
  for (std::size_t i = 0; i < n; ++i) {
    counts[i] = actions[i].size();
    profiles *= counts[i];
  }
  // Only used for profile indexing of Gamma / alpha.
  const Game shape = Game::with_default_labels("", counts,
                                               std::vector<Rational>(profiles * n));
  std::vector<Rational> payoffs(shape.num_profiles() * n, Rational(0));
  for (std::size_t r = 0; r < shape.num_profiles(); ++r) {
    MixedProfile sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = actions[i][shape.action_in(r, i)];
    const auto weights = product_distribution(game, sigma);
    for (std::size_t c = 0; c < weights.size(); ++c) {
      if (sgn(weights[c]) == 0) continue;
      for (std::size_t i = 0; i < n; ++i) payoffs[r * n + i] += weights[c] * game.payoff(c, i);
    }
  }
  Game reduced(game.name() + "/r", std::move(labels), std::move(payoffs));
  return {game, std::move(reduced), std::move(actions), std::move(classification),
          std::move(parts)};
}

CorrelatedStrategy lift(const ReducedGame& reduced, const CorrelatedStrategy& mu) {
  require_correlated(reduced.game, mu);
  const std::size_t n = reduced.base.num_players();
  CorrelatedStrategy out(reduced.base.num_profiles(), Rational(0));
  for (std::size_t r = 0; r < mu.size(); ++r) {
    if (sgn(mu[r]) == 0) continue;
    MixedProfile sigma(n);
    for (std::size_t i = 0; i < n; ++i) {
      sigma[i] = reduced.reduced_actions[i][reduced.game.action_in(r, i)];
    }
    const auto w = product_distribution(reduced.base, sigma);
    for (std::size_t c = 0; c < w.size(); ++c) {
      if (sgn(w[c]) != 0) out[c] += mu[r] * w[c];
    }
  }
  return out;
}

MixedProfile lift(const ReducedGame& reduced, const MixedProfile& sigma) {
  require_mixed_profile(reduced.game, sigma);
  MixedProfile out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    MixedStrategy s(reduced.base.num_actions(i), Rational(0));
    for (std::size_t k = 0; k < sigma[i].size(); ++k) {
      if (sgn(sigma[i][k]) == 0) continue;
      for (std::size_t a = 0; a < s.size(); ++a) {
        s[a] += sigma[i][k] * reduced.reduced_actions[i][k][a];
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Full: return "full";
    case PolicyKind::StrongFull: return "strong-full";
  }
  return "?";
}

CorrelatedStrategy ReductionTrace::lift_to_base(const CorrelatedStrategy& mu) const {
  CorrelatedStrategy out = mu;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) out = lift(it->reduced, out);
  return out;
}

MixedProfile ReductionTrace::lift_to_base(const MixedProfile& sigma) const {
  MixedProfile out = sigma;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) out = lift(it->reduced, out);
  return out;
}

ReductionTrace iterate_to_elementary(const Game& game, const ReductionPolicy& policy) {
  ReductionTrace trace{{}, game, false};
  const FullDualOptions options{policy.seed};
  while (!is_elementary(trace.terminal).elementary) {
    const Game& current = trace.terminal;
    auto alpha = policy.kind == PolicyKind::Full ? full_dual_vector(current, options)
                                                 : strong_full_dual_vector(current, options);
    auto reduced = reduce(current, alpha);
    if (reduced.game.total_actions() >= current.total_actions()) {
      throw InternalError("dual reduction of non-elementary game '" + current.name() +
                          "' did not remove any strategy");
    }
    Game next = reduced.game;
    trace.stages.push_back({current, std::move(alpha), std::move(reduced)});
    trace.terminal = std::move(next);
  }
  trace.terminal_elementary = true;
  return trace;
}

std::vector<std::size_t> nonunique_stages(const ReductionTrace& trace,
                                          const ReductionPolicy& policy) {
  const FullDualOptions other{policy.seed ? *policy.seed + 1 : 1};
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < trace.stages.size(); ++k) {
    const auto& stage = trace.stages[k];
    bool grouped = false;
    for (const auto& player : stage.reduced.classification) {
      for (const auto& c : player) grouped = grouped || c.status == StrategyStatus::Grouped;
    }
    if (!grouped) continue;
    const auto alpha = policy.kind == PolicyKind::Full
                           ? full_dual_vector(stage.game, other)
                           : strong_full_dual_vector(stage.game, other);
    if (reduce(stage.game, alpha).reduced_actions != stage.reduced.reduced_actions) {
      out.push_back(k);
    }
  }
  return out;
}

bool block_equilibrium_check(const Game& game, const DeviationProfile& alpha,
                             const Block& block) {
  require_shape(game, alpha);
  if (block.sets.size() != game.num_players()) {
    throw std::invalid_argument("block has wrong number of players");
  }
  MixedProfile sigma;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto part = markov_decompose(alpha[i]);
    auto members = block.sets[i];
    std::sort(members.begin(), members.end());
    const auto it = std::find(part.classes.begin(), part.classes.end(), members);
    if (it == part.classes.end()) {
      throw AnalysisError("block component of player " + std::to_string(i + 1) +
                          " is not a minimal absorbing class");
    }
    const auto& full = part.stationary[static_cast<std::size_t>(it - part.classes.begin())];
    MixedStrategy restricted;
    for (auto s : block.sets[i]) restricted.push_back(full[s]);
    sigma.push_back(std::move(restricted));
  }
  return is_nash(restrict(game, block), sigma);
}

const char* to_string(StageCategory category) {
  switch (category) {
    case StageCategory::Elementary: return "elementary";
    case StageCategory::Singleton: return "singleton";
    case StageCategory::EliminationOnly: return "elimination-only";
    case StageCategory::Other: return "other";
  }
  return "?";
}

StageCategory categorize(const ReducedGame& reduced) {
  bool grouped = false;
  bool eliminated = false;
  for (const auto& player : reduced.classification) {
    for (const auto& s : player) {
      grouped = grouped || s.status == StrategyStatus::Grouped;
      eliminated = eliminated || s.status == StrategyStatus::Eliminated;
    }
  }
  if (!grouped && !eliminated) return StageCategory::Elementary;
  if (reduced.game.num_profiles() == 1) return StageCategory::Singleton;
  if (!grouped) return StageCategory::EliminationOnly;
  return StageCategory::Other;
}

}  // namespace dualred
