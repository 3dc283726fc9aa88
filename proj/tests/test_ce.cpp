#include <gtest/gtest.h>

#include "common.hpp"
#include "dualred/ce.hpp"
#include "dualred/errors.hpp"
#include "dualred/game_io.hpp"
#include "oracles.hpp"

using namespace dualred;
using testing_support::load;
using testing_support::q;

namespace {

Game one_by_one() { return Game::with_default_labels("one", {1, 1}, {Rational(0), Rational(0)}); }

CorrelatedStrategy point(const Game& g, const Profile& c) {
  return point_mass(g.num_profiles(), g.index_of(c));
}

// 2x2 game with a strictly dominated second row for player 1.
Game dominated_row() {
  return Game::with_default_labels("dominated", {2, 2},
                                   {3, 1, 0, 0, 2, 0, -1, 1});
}

}  // namespace

TEST(CeSystem, Shape) {
  const auto one = ce_system(one_by_one());
  EXPECT_EQ(solve(one.region).point, (std::vector<Rational>{1}));
  const auto mp = ce_system(load("matching_pennies.game"));
  EXPECT_EQ(mp.incentives.size(), 8u);
  std::size_t zero_rows = 0;
  for (const auto& ic : mp.incentives) {
    const bool zero = std::all_of(ic.row.begin(), ic.row.end(), [](const Rational& x) { return sgn(x) == 0; });
    zero_rows += zero;
    EXPECT_EQ(zero, ic.deviation.from == ic.deviation.to);
  }
  EXPECT_EQ(zero_rows, 4u);
  // Rows are ordered by (player, from, to).
  for (std::size_t k = 1; k < mp.incentives.size(); ++k) {
    EXPECT_LT(mp.incentives[k - 1].deviation, mp.incentives[k].deviation);
  }
}

TEST(CeSystem, WeakDominanceRegion) {
  const auto wd = load("weak_dominance.game");
  const auto sys = ce_system(wd);
  const auto ie = implicit_equalities(sys.region);
  std::vector<std::size_t> pinned;
  for (auto r : ie.rows) {
    if (r >= sys.nonnegativity_begin && r < sys.simplex_row) pinned.push_back(r - sys.nonnegativity_begin);
  }
  EXPECT_EQ(pinned, (std::vector<std::size_t>{wd.index_of({0, 1}), wd.index_of({1, 1})}));
  // Every distribution off y2 is a CE.
  EXPECT_TRUE(is_correlated_equilibrium(wd, {q("1/3"), 0, q("2/3"), 0}).is_equilibrium);
  EXPECT_FALSE(is_correlated_equilibrium(wd, {q("1/2"), q("1/2"), 0, 0}).is_equilibrium);
}

TEST(Membership, Examples) {
  const auto mp = load("matching_pennies.game");
  EXPECT_TRUE(is_correlated_equilibrium(mp, uniform(4)).is_equilibrium);
  const auto bad = is_correlated_equilibrium(mp, point(mp, {0, 0}));
  EXPECT_FALSE(bad.is_equilibrium);
  EXPECT_NE(std::find(bad.violated.begin(), bad.violated.end(), Deviation{1, 0, 1}), bad.violated.end());
  const auto wd = load("weak_dominance.game");
  EXPECT_TRUE(is_correlated_equilibrium(wd, point(wd, {0, 0})).is_equilibrium);
  EXPECT_THROW(is_correlated_equilibrium(wd, uniform(3)), std::invalid_argument);
}

TEST(Jeopardy, Examples) {
  const auto wd = load("weak_dominance.game");
  EXPECT_TRUE(jeopardizes(wd, 0, 1, 1));
  EXPECT_TRUE(jeopardizes(wd, 0, 0, 1));
  EXPECT_TRUE(jeopardizes(wd, 0, 1, 0));
  EXPECT_FALSE(jeopardizes(wd, 1, 0, 1));
  const auto three = load("three_column.game");
  EXPECT_TRUE(jeopardizes(three, 1, 0, 1));
  EXPECT_TRUE(jeopardizes(three, 1, 0, 2));
  EXPECT_THROW(jeopardizes(three, 0, 0, 2), std::out_of_range);
}

TEST(Coherent, Examples) {
  EXPECT_EQ(coherent_strategies(load("matching_pennies.game")),
            (std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}}));
  EXPECT_EQ(coherent_strategies(load("weak_dominance.game")),
            (std::vector<std::vector<std::size_t>>{{0, 1}, {0}}));
  EXPECT_EQ(coherent_strategies(dominated_row())[0], (std::vector<std::size_t>{0}));
}

TEST(ZeroProfiles, Examples) {
  EXPECT_TRUE(zero_probability_profiles(load("matching_pennies.game")).empty());
  const auto wd = load("weak_dominance.game");
  EXPECT_EQ(zero_probability_profiles(wd),
            (std::vector<std::size_t>{wd.index_of({0, 1}), wd.index_of({1, 1})}));
  EXPECT_TRUE(zero_probability_profiles(load("coordination.game")).empty());
}

TEST(Elementary, Examples) {
  EXPECT_TRUE(is_elementary(one_by_one()).elementary);
  EXPECT_FALSE(is_elementary(load("matching_pennies.game")).elementary);
  const auto coord = load("coordination.game");
  const auto e = is_elementary(coord);
  ASSERT_TRUE(e.elementary);
  EXPECT_GT(e.slack, 0);
  EXPECT_TRUE(is_strict_ce(coord, e.witness));
  for (const auto& w : e.witness) EXPECT_GT(w, 0);
}

TEST(Tightness, Examples) {
  EXPECT_TRUE(is_tight(load("matching_pennies.game")));
  EXPECT_FALSE(is_tight(load("weak_dominance.game")));
  EXPECT_TRUE(is_tight(one_by_one()));
  EXPECT_TRUE(is_pretight(load("matching_pennies.game")));
  EXPECT_TRUE(is_pretight(load("weak_dominance.game")));
  EXPECT_FALSE(is_pretight(load("coordination.game")));
}

TEST(StrictCe, Examples) {
  const auto coord = load("coordination.game");
  EXPECT_TRUE(is_strict_ce(coord, point(coord, {0, 0})));
  EXPECT_FALSE(is_strict_ce(load("matching_pennies.game"), uniform(4)));
  const auto wd = load("weak_dominance.game");
  EXPECT_FALSE(is_strict_ce(wd, point(wd, {0, 0})));
  EXPECT_THROW(is_strict_ce(coord, point(coord, {0, 1})), AnalysisError);
}

TEST(Dimension, Examples) {
  EXPECT_EQ(ce_dimension(load("matching_pennies.game")), 0);
  EXPECT_EQ(ce_dimension(load("coordination.game")), 3);
  EXPECT_EQ(ce_dimension(one_by_one()), 0);
  EXPECT_EQ(ce_dimension(gen_game(3, {2, 2}, 0, 0)), 3);
}

TEST(CeReport, AgreesWithVertexEnumeration) {
  int elementary = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = seed % 2 ? gen_game(seed, {2, 3}, -2, 2) : gen_game(seed, {2, 2}, -3, 3);
    const auto report = analyze_ce(g);
    const auto vertices = oracle::ce_vertices(g);
    ASSERT_FALSE(vertices.empty()) << "seed " << seed;
    EXPECT_EQ(report.dimension, oracle::affine_dimension(vertices)) << "seed " << seed;
    EXPECT_EQ(ce_dimension(g), report.dimension);
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      for (std::size_t a = 0; a < g.num_actions(i); ++a) {
        for (std::size_t b = 0; b < g.num_actions(i); ++b) {
          bool all_zero = true;
          for (const auto& v : vertices) all_zero = all_zero && oracle::incentive(g, v, i, a, b) == 0;
          EXPECT_EQ(report.jeopardy(i, a, b), all_zero) << "seed " << seed;
        }
      }
    }
    std::vector<std::size_t> zero;
    for (std::size_t c = 0; c < g.num_profiles(); ++c) {
      bool z = true;
      for (const auto& v : vertices) z = z && v[c] == 0;
      if (z) zero.push_back(c);
    }
    EXPECT_EQ(report.zero_profiles, zero) << "seed " << seed;
    EXPECT_EQ(zero_probability_profiles(g), zero);
    // A relative-interior point decides elementarity independently.
    const auto center = oracle::centroid(vertices);
    bool strict_full = std::all_of(center.begin(), center.end(), [](const Rational& x) { return x > 0; });
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      for (std::size_t a = 0; a < g.num_actions(i); ++a) {
        for (std::size_t b = 0; b < g.num_actions(i); ++b) {
          if (a != b) strict_full = strict_full && oracle::incentive(g, center, i, a, b) < 0;
        }
      }
    }
    EXPECT_EQ(report.is_elementary, strict_full) << "seed " << seed;
    EXPECT_EQ(is_elementary(g).elementary, strict_full) << "seed " << seed;
    elementary += strict_full;
    EXPECT_TRUE(oracle::is_ce(g, report.witness_ce));
    for (auto c : zero) EXPECT_EQ(report.witness_ce[c], 0);
    if (report.is_elementary) {
      EXPECT_EQ(report.dimension, static_cast<long>(g.num_profiles()) - 1);
      EXPECT_TRUE(report.jeopardy.nontrivial_edges().empty());
      EXPECT_TRUE(report.zero_profiles.empty());
    }
    if (report.is_tight) EXPECT_TRUE(report.is_pretight);
  }
  EXPECT_GT(elementary, 0);
}
