#include <gtest/gtest.h>

#include "common.hpp"
#include "dualred/ce.hpp"
#include "dualred/errors.hpp"
#include "dualred/game_io.hpp"
#include "dualred/reduction.hpp"
#include "dualred/report.hpp"

using namespace dualred;
using testing_support::load;
using testing_support::q;

namespace {

std::vector<Rational> flat(const std::vector<std::vector<long>>& rows) {
  std::vector<Rational> out;
  for (const auto& r : rows) {
    for (auto v : r) out.emplace_back(v);
  }
  return out;
}

std::size_t error_line(std::string_view text) {
  try {
    parse_game(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Parse, MatchingPennies) {
  const auto g = load("matching_pennies.game");
  EXPECT_EQ(g.name(), "matching-pennies");
  EXPECT_EQ(g.action_counts(), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(g.payoff_table(), flat({{1, -1}, {-1, 1}, {-1, 1}, {1, -1}}));
  EXPECT_EQ(g.label(1, 1), "y2");
}

TEST(Parse, TrivialAndDefaults) {
  const auto g = parse_game("game t\nplayers 2\nactions 1 1\npayoffs\n0 0\n");
  EXPECT_EQ(g.num_profiles(), 1u);
  EXPECT_EQ(g.label(0, 0), "s1");
  const auto r = parse_game("game r\nplayers 1\nactions 2\npayoffs\n1/2\n-6/4 # note\n");
  EXPECT_EQ(r.payoff(1, 0), q("-3/2"));
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_line("game g\nplayers 2\nactions 2 2\npayoffs\n1 1\n1 1\n1 1\n"), 7u);
  try {
    parse_game("game g\nplayers 2\nactions 2 2\npayoffs\n1 1\n1 1\n1 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("expected 4"), std::string::npos) << e.what();
  }
  EXPECT_EQ(error_line("game g\nplayers 2\nactions 1 1\npayoffs\n1 1/0\n"), 5u);
  EXPECT_EQ(error_line("game g\nplayers 2\nactions 1 1\npayoffs\n1\n"), 5u);
  EXPECT_EQ(error_line("game g\nplayers 2\nactions 2 1\nlabels a a\nlabels b\npayoffs\n0 0\n0 0\n"),
            4u);
  EXPECT_EQ(error_line("game g\nplayers 2\nactions 1 1\nlabels a\npayoffs\n0 0\n"), 4u);
  EXPECT_EQ(error_line("game g\nplayers 2\nactions 1\npayoffs\n0 0\n"), 3u);
  EXPECT_EQ(error_line("game g\nplayers 1\nactions 1\nbogus\n"), 4u);
  EXPECT_EQ(error_line("game g\nplayers 1\nactions 1\npayoffs\n0\n0\n"), 6u);
  EXPECT_NE(error_line("players 1\nactions 1\npayoffs\n0\n"), 0u);
  EXPECT_NE(error_line("game g\nplayers 1\nactions 0\npayoffs\n"), 0u);
}

TEST(Write, RoundTrip) {
  for (const char* name : {"matching_pennies.game", "weak_dominance.game", "three_column.game",
                           "one_by_two.game", "coordination.game", "three_column_reduced.game",
                           "matching_pennies_rescaled.game"}) {
    const auto g = load(name);
    EXPECT_EQ(parse_game(write_game(g)), g) << name;
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = gen_game(seed, {2, 3, 2}, -7, 7);
    const auto text = write_game(g);
    EXPECT_EQ(parse_game(text), g);
    EXPECT_EQ(write_game(parse_game(text)), text);
    const auto z = gen_zero_sum(seed, 3, 2, -3, 3);
    EXPECT_EQ(parse_game(write_game(z)), z);
    const auto s = gen_cyclic_symmetric(seed, 3, 2, -3, 3);
    EXPECT_EQ(parse_game(write_game(s)), s);
  }
}

TEST(Write, RationalPayoffs) {
  const auto g = load("one_by_two.game");
  DeviationProfile alpha{DeviationPlan::identity(1), DeviationPlan::constant({q("1/3"), q("2/3")})};
  const auto r = reduce(g, alpha);
  const auto text = write_game(r.game);
  EXPECT_NE(text.find("\n1/3 1\n"), std::string::npos) << text;
  EXPECT_EQ(parse_game(text), r.game);
}

TEST(Profiles, Parse) {
  const auto mp = load("matching_pennies.game");
  EXPECT_EQ(parse_mixed_profile(testing_support::slurp("mp_uniform.profile"), mp),
            (MixedProfile{uniform(2), uniform(2)}));
  EXPECT_EQ(parse_correlated(testing_support::slurp("mp_uniform.mu"), mp),
            CorrelatedStrategy(4, q("1/4")));
  EXPECT_THROW(parse_correlated("1/2 1/2", mp), std::invalid_argument);
  EXPECT_THROW(parse_mixed_profile("1 0\n1/2 1/3\n", mp), std::invalid_argument);
}

TEST(Generator, PinnedVectors) {
  // Reference values from an independent MT19937-64 implementation.
  EXPECT_EQ(gen_game(7, {2, 2}, -5, 5).payoff_table(), flat({{-5, 2}, {4, -3}, {0, 5}, {-4, 3}}));
  EXPECT_EQ(gen_game(42, {2, 3}, 0, 9).payoff_table(),
            flat({{6, 4}, {0, 2}, {1, 8}, {6, 4}, {0, 7}, {5, 2}}));
  EXPECT_EQ(gen_zero_sum(11, 2, 2, -5, 5).payoff_table(),
            flat({{4, -4}, {4, -4}, {-2, 2}, {1, -1}}));
  EXPECT_EQ(gen_game(7, {2, 2}, -5, 5).name(), "gen-7");
  EXPECT_EQ(gen_zero_sum(11, 2, 2, -5, 5).name(), "zerosum-11");
}

TEST(Generator, Properties) {
  EXPECT_EQ(gen_game(5, {3, 2}, -9, 9), gen_game(5, {3, 2}, -9, 9));
  EXPECT_NE(gen_game(5, {3, 2}, -9, 9).payoff_table(), gen_game(6, {3, 2}, -9, 9).payoff_table());
  const auto zero = gen_game(1, {2, 2}, 0, 0);
  for (const auto& v : zero.payoff_table()) EXPECT_EQ(v, 0);
  EXPECT_EQ(ce_dimension(zero), 3);
  EXPECT_TRUE(is_correlated_equilibrium(zero, {1, 0, 0, 0}).is_equilibrium);
  EXPECT_THROW(gen_game(1, {2, 0}, 0, 1), std::invalid_argument);
  EXPECT_THROW(gen_game(1, {2, 2}, 1, 0), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = gen_cyclic_symmetric(seed, 3, 2, -4, 4);
    EXPECT_TRUE(is_p_symmetric(s, PlayerPermutation::cycle(3)));
    const auto b = gen_cyclic_symmetric(seed, 2, 3, -4, 4);
    EXPECT_TRUE(is_p_symmetric(b, PlayerPermutation::swap(2, 0, 1)));
    for (std::size_t c = 0; c < b.num_profiles(); ++c) {
      const auto p = b.profile_at(c);
      EXPECT_EQ(b.payoff(c, 1), b.payoff({p[1], p[0]}, 0));
    }
  }
}

TEST(Report, ExactRationalStrings) {
  const auto g = load("one_by_two.game");
  DeviationProfile alpha{DeviationPlan::identity(1), DeviationPlan::constant({q("1/3"), q("2/3")})};
  const auto doc = reduced_json(reduce(g, alpha));
  const auto text = doc.dump();
  EXPECT_EQ(text.find('.'), std::string::npos) << text;
  EXPECT_EQ(doc["game"]["payoffs"][0][0], "1/3");
  EXPECT_EQ(doc["category"], "singleton");
  const auto ce = ce_report_json(g, analyze_ce(g));
  EXPECT_TRUE(ce.contains("dimension"));
  EXPECT_EQ(to_json(Rational(-7, 2)), "-7/2");
}
