#include "dualred/dual.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "dualred/errors.hpp"

namespace dualred {

DeviationPlan::DeviationPlan(std::size_t m) : size_(m), entries_(m * m, Rational(0)) {
  for (std::size_t k = 0; k < m; ++k) entries_[k * m + k] = 1;
}

DeviationPlan::DeviationPlan(std::size_t m, std::vector<Rational> entries)
    : size_(m), entries_(std::move(entries)) {
  if (entries_.size() != m * m) {
    throw std::invalid_argument("deviation plan needs " + std::to_string(m * m) +
                                " entries");
  }
  for (std::size_t from = 0; from < m; ++from) {
    std::span<const Rational> row(entries_.data() + from * m, m);
    if (!is_distribution(row)) {
      throw std::invalid_argument("deviation plan row " + std::to_string(from + 1) +
                                  " is not a distribution");
    }
  }
}

DeviationPlan DeviationPlan::constant(const MixedStrategy& target) {
  const std::size_t m = target.size();
  std::vector<Rational> e;
  e.reserve(m * m);
  for (std::size_t from = 0; from < m; ++from) e.insert(e.end(), target.begin(), target.end());
  return DeviationPlan(m, std::move(e));
}

DeviationPlan DeviationPlan::from_rows(const std::vector<MixedStrategy>& rows) {
  std::vector<Rational> e;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw std::invalid_argument("deviation plan must be square");
    e.insert(e.end(), r.begin(), r.end());
  }
  return DeviationPlan(rows.size(), std::move(e));
}

MixedStrategy DeviationPlan::image(std::size_t from) const {
  return MixedStrategy(entries_.begin() + static_cast<std::ptrdiff_t>(from * size_),
                       entries_.begin() + static_cast<std::ptrdiff_t>((from + 1) * size_));
}

MixedStrategy DeviationPlan::apply(const MixedStrategy& sigma) const {
  if (sigma.size() != size_) throw std::invalid_argument("mixed strategy has wrong size");
  MixedStrategy out(size_, Rational(0));
  for (std::size_t from = 0; from < size_; ++from) {
    if (sgn(sigma[from]) == 0) continue;
    for (std::size_t to = 0; to < size_; ++to) {
      const auto& a = (*this)(from, to);
      if (sgn(a) != 0) out[to] += sigma[from] * a;
    }
  }
  return out;
}

bool DeviationPlan::is_identity() const { return *this == DeviationPlan(size_); }

void require_shape(const Game& game, const DeviationProfile& alpha) {
  if (alpha.size() != game.num_players()) {
    throw std::invalid_argument("deviation profile has " + std::to_string(alpha.size()) +
                                " plans, game has " + std::to_string(game.num_players()) +
                                " players");
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i].size() != game.num_actions(i)) {
      throw std::invalid_argument("deviation plan of player " + std::to_string(i + 1) +
                                  " has wrong size");
    }
  }
}

DeviationProfile trivial_dual_vector(const Game& game) {
  DeviationProfile alpha;
  for (auto m : game.action_counts()) alpha.emplace_back(m);
  return alpha;
}

DeviationProfile mix(const DeviationProfile& a, const DeviationProfile& b,
                     const Rational& weight) {
  if (a.size() != b.size()) throw std::invalid_argument("mix: profile size mismatch");
  DeviationProfile out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw std::invalid_argument("mix: plan size mismatch");
    std::vector<Rational> e(a[i].entries().size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      e[k] = weight * a[i].entries()[k] + (1 - weight) * b[i].entries()[k];
    }
    out.emplace_back(a[i].size(), std::move(e));
  }
  return out;
}

DualGainTable gains(const Game& game, const DeviationProfile& alpha) {
  require_shape(game, alpha);
  const std::size_t n = game.num_players();
  DualGainTable t;
  t.players = n;
  t.per_player.assign(game.num_profiles() * n, Rational(0));
  t.total.assign(game.num_profiles(), Rational(0));
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t from = game.action_in(c, i);
      Rational deviated = 0;
      for (std::size_t to = 0; to < game.num_actions(i); ++to) {
        const auto& a = alpha[i](from, to);
        if (sgn(a) != 0) deviated += a * game.payoff(game.with_action(c, i, to), i);
      }
      t.per_player[c * n + i] = deviated - game.payoff(c, i);
      t.total[c] += t.per_player[c * n + i];
    }
  }
  return t;
}

DualCheck is_dual_vector(const Game& game, const DeviationProfile& alpha) {
  const auto t = gains(game, alpha);
  DualCheck out;
  for (std::size_t c = 0; c < t.total.size(); ++c) {
    if (sgn(t.total[c]) < 0) out.violating.push_back(c);
  }
  out.is_dual_vector = out.violating.empty();
  return out;
}

DeviationProfile DualPolytope::plans(const std::vector<Rational>& point) const {
  DeviationProfile alpha;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto first = point.begin() + static_cast<std::ptrdiff_t>(offset[i]);
    alpha.emplace_back(sizes[i], std::vector<Rational>(
                                     first, first + static_cast<std::ptrdiff_t>(
                                                        sizes[i] * sizes[i])));
  }
  return alpha;
}

DualPolytope dual_polytope(const Game& game) {
  DualPolytope p;
  p.sizes = game.action_counts();
  std::size_t vars = 0;
  for (auto m : p.sizes) {
    p.offset.push_back(vars);
    vars += m * m;
  }
  p.region = LinearProgram(vars);
  for (std::size_t i = 0; i < p.sizes.size(); ++i) {
    const std::size_t m = p.sizes[i];
    for (std::size_t from = 0; from < m; ++from) {
      std::vector<Rational> row(vars, Rational(0));
      for (std::size_t to = 0; to < m; ++to) {
        const auto v = p.var({i, from, to});
        p.region.set_lower_bound(v, Rational(0));
        p.region.set_name(v, "a" + std::to_string(i + 1) + "_" + std::to_string(from + 1) +
                                 "_" + std::to_string(to + 1));
        row[v] = 1;
      }
      p.region.add_constraint(std::move(row), Relation::Equal, Rational(1));
    }
  }
  p.gain_begin = p.region.num_constraints();
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    std::vector<Rational> row(vars, Rational(0));
    Rational rhs = 0;
    for (std::size_t i = 0; i < p.sizes.size(); ++i) {
      const std::size_t from = game.action_in(c, i);
      for (std::size_t to = 0; to < p.sizes[i]; ++to) {
        row[p.var({i, from, to})] += game.payoff(game.with_action(c, i, to), i);
      }
      rhs += game.payoff(c, i);
    }
    p.region.add_constraint(std::move(row), Relation::GreaterEqual, std::move(rhs));
  }
  return p;
}

namespace {

struct SupportSearch {
  std::vector<Deviation> support;
  std::vector<std::vector<Rational>> maximizers;
};

std::vector<Deviation> all_triples(const Game& game) {
  std::vector<Deviation> out;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t from = 0; from < game.num_actions(i); ++from) {
      for (std::size_t to = 0; to < game.num_actions(i); ++to) out.push_back({i, from, to});
    }
  }
  return out;
}

SupportSearch search_support(const Game& game, const DualPolytope& poly,
                             std::optional<std::uint64_t> seed) {
  auto order = all_triples(game);
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  SupportSearch out;
  for (const auto& d : order) {
    const auto v = poly.var(d);
    const bool covered = std::any_of(out.maximizers.begin(), out.maximizers.end(),
                                     [&](const auto& x) { return sgn(x[v]) > 0; });
    if (!covered) {
      LinearProgram lp = poly.region;
      std::vector<Rational> f(lp.num_vars(), Rational(0));
      f[v] = 1;
      lp.set_objective(std::move(f), Sense::Maximize);
      auto r = solve(lp);
      if (r.status != LpStatus::Optimal) {
        throw InternalError("dual-vector polytope LP did not reach an optimum");
      }
      if (sgn(r.value) <= 0) continue;
      out.maximizers.push_back(std::move(r.point));
    }
    out.support.push_back(d);
  }
  std::sort(out.support.begin(), out.support.end());
  return out;
}

struct FullResult {
  DeviationProfile alpha;
  std::vector<Deviation> support;
};

FullResult compute_full(const Game& game, const FullDualOptions& options) {
  const auto poly = dual_polytope(game);
  auto search = search_support(game, poly, options.seed);
  std::vector<Rational> weights(search.maximizers.size(), Rational(1));
  if (options.seed) {
    std::mt19937_64 rng(*options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& w : weights) w = static_cast<long>(1 + rng() % 8);
  }
  const Rational total = sum(weights);
  std::vector<Rational> avg(poly.region.num_vars(), Rational(0));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    for (std::size_t v = 0; v < avg.size(); ++v) {
      if (sgn(search.maximizers[k][v]) != 0) avg[v] += weights[k] * search.maximizers[k][v];
    }
  }
  for (auto& v : avg) v /= total;
  FullResult out{poly.plans(avg), std::move(search.support)};
  if (!is_dual_vector(game, out.alpha).is_dual_vector) {
    throw InternalError("averaged maximizers are not a dual vector");
  }
  return out;
}

}  // namespace

std::vector<Deviation> component_support(const Game& game) {
  return search_support(game, dual_polytope(game), std::nullopt).support;
}

DeviationProfile full_dual_vector(const Game& game, const FullDualOptions& options) {
  return compute_full(game, options).alpha;
}

namespace {

DeviationProfile strong_for(const Game& game, const std::vector<std::size_t>& zero) {
  if (zero.empty()) return trivial_dual_vector(game);
  auto poly = dual_polytope(game);
  LinearProgram lp = poly.region;
  const auto t = lp.add_variable("t");
  for (auto c : zero) {
    auto row = lp.constraint(poly.gain_begin + c).coeffs;
    row[t] = -1;
    lp.add_constraint(std::move(row), Relation::GreaterEqual,
                      lp.constraint(poly.gain_begin + c).rhs);
  }
  std::vector<Rational> cap(lp.num_vars(), Rational(0));
  cap[t] = 1;
  lp.add_constraint(cap, Relation::LessEqual, Rational(1));
  lp.set_objective(std::move(cap), Sense::Maximize);
  const auto r = solve(lp);
  if (r.status != LpStatus::Optimal || sgn(r.value) <= 0) {
    throw InternalError("no strong dual vector found; the solver is inconsistent");
  }
  return poly.plans(r.point);
}

}  // namespace

DeviationProfile strong_dual_vector(const Game& game) {
  return strong_for(game, zero_probability_profiles(game));
}

DeviationProfile strong_full_dual_vector(const Game& game, const FullDualOptions& options) {
  const auto zero = zero_probability_profiles(game);
  const auto full = compute_full(game, options);
  auto alpha = mix(full.alpha, strong_for(game, zero), Rational(1, 2));
  if (!is_full(game, alpha, full.support) || !is_strong(game, alpha, zero)) {
    throw InternalError("strong+full combination failed verification");
  }
  return alpha;
}

std::vector<Deviation> support_of(const DeviationProfile& alpha) {
  std::vector<Deviation> out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (std::size_t from = 0; from < alpha[i].size(); ++from) {
      for (std::size_t to = 0; to < alpha[i].size(); ++to) {
        if (sgn(alpha[i](from, to)) > 0) out.push_back({i, from, to});
      }
    }
  }
  return out;
}

bool is_full(const Game& game, const DeviationProfile& alpha,
             const std::vector<Deviation>& support) {
  return is_dual_vector(game, alpha).is_dual_vector && support_of(alpha) == support;
}

bool is_strong(const Game& game, const DeviationProfile& alpha,
               const std::vector<std::size_t>& zero_profiles) {
  const auto t = gains(game, alpha);
  for (const auto& d : t.total) {
    if (sgn(d) < 0) return false;
  }
  return std::all_of(zero_profiles.begin(), zero_profiles.end(),
                     [&](std::size_t c) { return sgn(t.total[c]) > 0; });
}

bool is_zero_sum(const Game& game) {
  if (game.num_players() != 2) return false;
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    if (sgn(game.payoff(c, 0) + game.payoff(c, 1)) != 0) return false;
  }
  return true;
}

namespace {

// Maximin strategy of `player` in a two-player game: max v such that the
// player's payoff is at least v against every opponent strategy.
std::pair<Rational, MixedStrategy> maximin(const Game& game, std::size_t player) {
  const std::size_t other = 1 - player;
  const std::size_t m = game.num_actions(player);
  LinearProgram lp(m + 1);
  for (std::size_t k = 0; k < m; ++k) lp.set_lower_bound(k, Rational(0));
  for (std::size_t o = 0; o < game.num_actions(other); ++o) {
    std::vector<Rational> row(m + 1, Rational(0));
    for (std::size_t k = 0; k < m; ++k) {
      Profile c(2);
      c[player] = k;
      c[other] = o;
      row[k] = game.payoff(c, player);
    }
    row[m] = -1;
    lp.add_constraint(std::move(row), Relation::GreaterEqual, Rational(0));
  }
  std::vector<Rational> simplex(m + 1, Rational(1));
  simplex[m] = 0;
  lp.add_constraint(std::move(simplex), Relation::Equal, Rational(1));
  std::vector<Rational> f(m + 1, Rational(0));
  f[m] = 1;
  lp.set_objective(std::move(f), Sense::Maximize);
  const auto r = solve(lp);
  if (r.status != LpStatus::Optimal) throw InternalError("value LP failed");
  return {r.point[m], MixedStrategy(r.point.begin(), r.point.end() - 1)};
}

Rational guaranteed(const Game& game, std::size_t player, const MixedStrategy& s) {
  const std::size_t other = 1 - player;
  std::optional<Rational> worst;
  for (std::size_t o = 0; o < game.num_actions(other); ++o) {
    Rational u = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      Profile c(2);
      c[player] = k;
      c[other] = o;
      u += s[k] * game.payoff(c, player);
    }
    if (!worst || u < *worst) worst = u;
  }
  return *worst;
}

}  // namespace

ZeroSumSolution solve_zero_sum(const Game& game) {
  if (!is_zero_sum(game)) throw AnalysisError("game is not two-player zero-sum");
  auto [v1, x] = maximin(game, 0);
  auto [v2, y] = maximin(game, 1);
  if (v1 != -v2) throw InternalError("zero-sum values disagree");
  return {v1, std::move(x), std::move(y)};
}

DeviationProfile zero_sum_dual_vector(const Game& game, const MixedStrategy& opt1,
                                      const MixedStrategy& opt2) {
  if (!is_zero_sum(game)) throw AnalysisError("game is not two-player zero-sum");
  require_distribution(opt1, game.num_actions(0), "optimal strategy of player 1");
  require_distribution(opt2, game.num_actions(1), "optimal strategy of player 2");
  const auto value = maximin(game, 0).first;
  if (guaranteed(game, 0, opt1) < value) {
    throw AnalysisError("strategy of player 1 is not optimal");
  }
  if (guaranteed(game, 1, opt2) < -value) {
    throw AnalysisError("strategy of player 2 is not optimal");
  }
  return {DeviationPlan::constant(opt1), DeviationPlan::constant(opt2)};
}

DeviationProfile zero_sum_dual_vector(const Game& game) {
  const auto s = solve_zero_sum(game);
  return zero_sum_dual_vector(game, s.row, s.column);
}

DeviationPlan epsilon_blend(const DeviationPlan& plan, const Rational& eps) {
  if (sgn(eps) <= 0 || eps > 1) {
    throw std::invalid_argument("blend weight must lie in (0, 1]");
  }
  const std::size_t m = plan.size();
  std::vector<Rational> e(m * m);
  for (std::size_t from = 0; from < m; ++from) {
    for (std::size_t to = 0; to < m; ++to) {
      e[from * m + to] = eps * plan(from, to) + (from == to ? Rational(1 - eps) : Rational(0));
    }
  }
  return DeviationPlan(m, std::move(e));
}

DeviationProfile rescaled_dual_vector(const Game& game, const DeviationProfile& alpha,
                                      const Rescaling& r) {
  if (!is_dual_vector(game, alpha).is_dual_vector) {
    throw AnalysisError("deviation profile is not a dual vector");
  }
  if (r.scale.size() != alpha.size()) {
    throw std::invalid_argument("rescaling has wrong number of players");
  }
  for (const auto& a : r.scale) {
    if (sgn(a) <= 0) throw std::invalid_argument("rescaling factors must be positive");
  }
  const Rational smallest = *std::min_element(r.scale.begin(), r.scale.end());
  DeviationProfile out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    out.push_back(epsilon_blend(alpha[i], smallest / r.scale[i]));
  }
  return out;
}

RedundancyResult redundancy_dual_vector(const Game& game) {
  RedundancyResult out;
  out.removed.resize(game.num_players());
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t m = game.num_actions(i);
    std::vector<bool> gone(m, false);
    std::vector<std::pair<std::size_t, MixedStrategy>> replacements;
    for (std::size_t s = 0; s < m; ++s) {
      std::vector<std::size_t> candidates;
      for (std::size_t d = 0; d < m; ++d) {
        if (d != s && !gone[d]) candidates.push_back(d);
      }
      if (candidates.empty()) continue;
      LinearProgram lp(candidates.size());
      for (std::size_t k = 0; k < candidates.size(); ++k) lp.set_lower_bound(k, Rational(0));
      lp.add_constraint(std::vector<Rational>(candidates.size(), Rational(1)),
                        Relation::Equal, Rational(1));
      for (std::size_t c = 0; c < game.num_profiles(); ++c) {
        if (game.action_in(c, i) != 0) continue;  // one representative per c_{-i}
        std::vector<Rational> row;
        for (auto d : candidates) row.push_back(game.payoff(game.with_action(c, i, d), i));
        lp.add_constraint(std::move(row), Relation::Equal,
                          game.payoff(game.with_action(c, i, s), i));
      }
      const auto r = solve(lp);
      if (r.status != LpStatus::Optimal) continue;
      MixedStrategy sigma(m, Rational(0));
      for (std::size_t k = 0; k < candidates.size(); ++k) sigma[candidates[k]] = r.point[k];
      gone[s] = true;
      replacements.emplace_back(s, std::move(sigma));
    }
    // A replacement may use strategies removed later; substitute those
    // (already resolved, in reverse order) so every image lies on kept ones.
    std::vector<MixedStrategy> rows(m);
    for (std::size_t k = 0; k < m; ++k) rows[k] = point_mass(m, k);
    for (auto it = replacements.rbegin(); it != replacements.rend(); ++it) {
      MixedStrategy resolved(m, Rational(0));
      for (std::size_t d = 0; d < m; ++d) {
        if (sgn(it->second[d]) == 0) continue;
        for (std::size_t e = 0; e < m; ++e) resolved[e] += it->second[d] * rows[d][e];
      }
      rows[it->first] = std::move(resolved);
    }
    for (const auto& [s, sigma] : replacements) out.removed[i].push_back(s);
    std::sort(out.removed[i].begin(), out.removed[i].end());
    out.alpha.push_back(DeviationPlan::from_rows(rows));
  }
  return out;
}

DeviationProfile symmetrize(const Game& game, const std::vector<PlayerPermutation>& perms,
                            const DeviationProfile& alpha) {
  require_shape(game, alpha);
  const auto group = permutation_closure(perms, game.num_players());
  for (const auto& p : group) {
    if (!is_p_symmetric(game, p)) {
      throw AnalysisError("game is not symmetric under the permutation group");
    }
  }
  if (!is_dual_vector(game, alpha).is_dual_vector) {
    throw AnalysisError("deviation profile is not a dual vector");
  }
  const Rational count(static_cast<long>(group.size()));
  DeviationProfile out;
  for (std::size_t j = 0; j < game.num_players(); ++j) {
    const std::size_t m = game.num_actions(j);
    std::vector<Rational> e(m * m, Rational(0));
    for (const auto& p : group) {
      // alpha^p_j = alpha_{p^{-1}(j)}
      std::size_t source = 0;
      while (p.mapping[source] != j) ++source;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += alpha[source].entries()[k];
    }
    for (auto& v : e) v /= count;
    out.emplace_back(m, std::move(e));
  }
  return out;
}

}  // namespace dualred
