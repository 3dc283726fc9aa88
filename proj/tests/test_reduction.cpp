#include <gtest/gtest.h>

#include "common.hpp"
#include "dualred/ce.hpp"
#include "dualred/dual.hpp"
#include "dualred/errors.hpp"
#include "dualred/game_io.hpp"
#include "dualred/nash.hpp"
#include "dualred/reduction.hpp"

using namespace dualred;
using testing_support::load;
using testing_support::q;

namespace {

DeviationProfile eps_alpha(const Rational& eps) {
  const MixedStrategy target{eps, 1 - eps};
  return {DeviationPlan::identity(1), DeviationPlan::constant(target)};
}

std::vector<StrategyStatus> statuses(const ReducedGame& r, std::size_t player) {
  std::vector<StrategyStatus> out;
  for (const auto& c : r.classification[player]) out.push_back(c.status);
  return out;
}

}  // namespace

TEST(Markov, Examples) {
  const auto id = markov_decompose(DeviationPlan::identity(3));
  EXPECT_TRUE(id.transient.empty());
  ASSERT_EQ(id.classes.size(), 3u);
  for (std::size_t s = 0; s < 3; ++s) EXPECT_EQ(id.stationary[s], point_mass(3, s));

  const auto eps = markov_decompose(DeviationPlan::constant({q("1/3"), q("2/3")}));
  ASSERT_EQ(eps.classes.size(), 1u);
  EXPECT_EQ(eps.classes[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(eps.stationary[0], (MixedStrategy{q("1/3"), q("2/3")}));

  const auto absorb = markov_decompose(DeviationPlan(2, {0, 1, 0, 1}));
  EXPECT_EQ(absorb.transient, (std::vector<std::size_t>{0}));
  EXPECT_EQ(absorb.classes, (std::vector<std::vector<std::size_t>>{{1}}));
}

TEST(Markov, MixedTransientAndClasses) {
  // 0 <-> 1 closed, 2 -> {0, 3}, 3 absorbing, 4 -> 2.
  const DeviationPlan p(5, {q("1/3"), q("2/3"), 0, 0, 0,
                            1, 0, 0, 0, 0,
                            q("1/2"), 0, 0, q("1/2"), 0,
                            0, 0, 0, 1, 0,
                            0, 0, 1, 0, 0});
  const auto d = markov_decompose(p);
  EXPECT_EQ(d.transient, (std::vector<std::size_t>{2, 4}));
  ASSERT_EQ(d.classes.size(), 2u);
  EXPECT_EQ(d.classes[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(d.classes[1], (std::vector<std::size_t>{3}));
  EXPECT_EQ(d.stationary[0], (MixedStrategy{q("3/5"), q("2/5"), 0, 0, 0}));
  for (const auto& s : d.stationary) EXPECT_EQ(p.apply(s), s);
}

TEST(Reduce, TrivialIsIsomorphic) {
  const auto g = load("weak_dominance.game");
  const auto r = reduce(g, trivial_dual_vector(g));
  EXPECT_EQ(r.game.payoff_table(), g.payoff_table());
  EXPECT_EQ(r.game.labels(), g.labels());
  for (std::size_t i = 0; i < 2; ++i) {
    for (auto s : statuses(r, i)) EXPECT_EQ(s, StrategyStatus::Kept);
  }
  EXPECT_EQ(categorize(r), StageCategory::Elementary);
}

TEST(Reduce, EpsilonGame) {
  const auto g = load("one_by_two.game");
  for (const auto& eps : {q("1/3"), q("2/3")}) {
    const auto r = reduce(g, eps_alpha(eps));
    ASSERT_EQ(r.game.num_profiles(), 1u);
    EXPECT_EQ(r.game.payoff(0, 0), eps);
    EXPECT_EQ(r.game.payoff(0, 1), 1);
    EXPECT_EQ(lift(r, CorrelatedStrategy{1}), (CorrelatedStrategy{eps, 1 - eps}));
    EXPECT_EQ(categorize(r), StageCategory::Singleton);
    EXPECT_TRUE(block_equilibrium_check(g, eps_alpha(eps), Block{{{0}, {0, 1}}}));
  }
  const auto r = reduce(g, eps_alpha(q("1/3")));
  EXPECT_EQ(write_game(r.game).find("1/3 1") != std::string::npos, true);
  EXPECT_EQ(r.game.label(1, 0), "(x2*1/3+y2*2/3)");
}

TEST(Reduce, RefusesNonDualVector) {
  const auto g = load("matching_pennies_rescaled.game");
  DeviationProfile alpha{DeviationPlan::constant(uniform(2)), DeviationPlan::constant(uniform(2))};
  EXPECT_THROW(reduce(g, alpha), AnalysisError);
}

TEST(Reduce, ThreeColumn) {
  const auto g = load("three_column.game");
  const auto r = reduce(g, redundancy_dual_vector(g).alpha);
  EXPECT_EQ(statuses(r, 1), (std::vector<StrategyStatus>{StrategyStatus::Eliminated,
                                                         StrategyStatus::Kept,
                                                         StrategyStatus::Kept}));
  EXPECT_EQ(categorize(r), StageCategory::EliminationOnly);
  const auto full = reduce(g, full_dual_vector(g));
  EXPECT_EQ(statuses(full, 1), statuses(r, 1));
  EXPECT_EQ(statuses(full, 0), statuses(r, 0));
  EXPECT_EQ(full.game.payoff_table(), r.game.payoff_table());
}

TEST(Lift, Examples) {
  const auto mp = load("matching_pennies.game");
  const auto r = reduce(mp, full_dual_vector(mp));
  ASSERT_EQ(r.game.num_profiles(), 1u);
  EXPECT_EQ(lift(r, CorrelatedStrategy{1}), CorrelatedStrategy(4, q("1/4")));
  EXPECT_EQ(lift(r, MixedProfile{{1}, {1}}), (MixedProfile{uniform(2), uniform(2)}));

  const auto g = load("coordination.game");
  const auto t = reduce(g, trivial_dual_vector(g));
  const CorrelatedStrategy mu{q("1/2"), 0, q("1/4"), q("1/4")};
  EXPECT_EQ(lift(t, mu), mu);
  EXPECT_THROW(lift(t, CorrelatedStrategy{1}), std::invalid_argument);
}

TEST(Iterate, Examples) {
  const auto coord = load("coordination.game");
  const auto e = iterate_to_elementary(coord);
  EXPECT_TRUE(e.stages.empty());
  EXPECT_TRUE(e.terminal_elementary);

  const auto mp = load("matching_pennies.game");
  const auto t = iterate_to_elementary(mp);
  ASSERT_EQ(t.stages.size(), 1u);
  ASSERT_EQ(t.terminal.num_profiles(), 1u);
  EXPECT_EQ(t.terminal.payoff(0, 0), 0);
  EXPECT_EQ(t.terminal.payoff(0, 1), 0);
  EXPECT_EQ(t.lift_to_base(MixedProfile{{1}, {1}}), (MixedProfile{uniform(2), uniform(2)}));

  const auto wd = load("weak_dominance.game");
  const auto w = iterate_to_elementary(wd);
  EXPECT_TRUE(w.terminal_elementary);
  ASSERT_EQ(w.terminal.num_profiles(), 1u);
  const auto sigma = w.lift_to_base(MixedProfile{{1}, {1}});
  EXPECT_GT(sigma[0][0], 0);
  EXPECT_GT(sigma[0][1], 0);
  EXPECT_EQ(sigma[1], point_mass(2, 0));
  const auto& first = w.stages.front().reduced;
  EXPECT_EQ(first.classification[1][1].status, StrategyStatus::Eliminated);
  EXPECT_NE(first.classification[0][1].status, StrategyStatus::Eliminated);

  const auto s = iterate_to_elementary(wd, {PolicyKind::StrongFull, std::nullopt});
  EXPECT_TRUE(s.terminal_elementary);
}

TEST(Iterate, LiftedTerminalEquilibriaAreEquilibria) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = gen_game(seed, {3, 3}, -3, 3);
    const auto t = iterate_to_elementary(g);
    EXPECT_TRUE(t.terminal_elementary);
    for (const auto& eq : bimatrix_nash(t.terminal).equilibria) {
      EXPECT_TRUE(is_nash(g, t.lift_to_base(eq))) << "seed " << seed;
    }
    const auto witness = is_elementary(t.terminal).witness;
    EXPECT_TRUE(is_correlated_equilibrium(g, t.lift_to_base(witness)).is_equilibrium);
  }
}

TEST(BlockCheck, Examples) {
  const auto coord = load("coordination.game");
  EXPECT_TRUE(block_equilibrium_check(coord, trivial_dual_vector(coord), Block{{{0}, {0}}}));
  const auto mp = load("matching_pennies.game");
  const auto full = full_dual_vector(mp);
  EXPECT_TRUE(block_equilibrium_check(mp, full, Block::full(mp)));
  EXPECT_THROW(block_equilibrium_check(mp, full, Block{{{0}, {0, 1}}}), AnalysisError);
}

TEST(Categorize, Examples) {
  const auto mp = load("matching_pennies.game");
  EXPECT_EQ(categorize(reduce(mp, full_dual_vector(mp))), StageCategory::Singleton);
  // Player 3 is indifferent, so grouping their strategies leaves four profiles.
  const auto g = Game::with_default_labels("grouping", {2, 2, 2},
                                           {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0,
                                            0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0});
  DeviationProfile alpha{DeviationPlan::identity(2), DeviationPlan::identity(2),
                         DeviationPlan::constant(uniform(2))};
  ASSERT_TRUE(is_dual_vector(g, alpha).is_dual_vector);
  EXPECT_EQ(categorize(reduce(g, alpha)), StageCategory::Other);
  EXPECT_STREQ(to_string(StageCategory::EliminationOnly), "elimination-only");
}
