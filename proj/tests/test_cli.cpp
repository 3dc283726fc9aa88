#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "common.hpp"
#include "dualred/cli.hpp"
#include "dualred/game_io.hpp"
#include "dualred/rational.hpp"

using testing_support::data_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dualred");
  std::ostringstream out, err;
  const int code = dualred::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

void no_floats(const nlohmann::json& j) {
  if (j.is_number_float()) ADD_FAILURE() << "float literal " << j.dump();
  if (j.is_structured()) {
    for (const auto& v : j) no_floats(v);
  }
}

}  // namespace

TEST(Cli, IterateMatchingPennies) {
  const auto r = run({"--json", "iterate", data_path("matching_pennies.game")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json_of(r);
  EXPECT_EQ(doc["stages"].size(), 1u);
  EXPECT_EQ(doc["terminal"]["payoffs"], nlohmann::json::parse(R"([["0","0"]])"));
  EXPECT_TRUE(doc["terminal_elementary"].get<bool>());
  no_floats(doc);
}

TEST(Cli, ReduceRedundancy) {
  const auto r = run({"reduce", "--mode", "redundancy", "--emit-game",
                      data_path("three_column.game")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto g = dualred::parse_game(r.out);
  const auto expected = testing_support::load("three_column_reduced.game");
  EXPECT_EQ(g.payoff_table(), expected.payoff_table());
  EXPECT_EQ(g.labels(), expected.labels());
}

TEST(Cli, CertifyUniformMu) {
  const auto r = run({"--json", "certify", data_path("matching_pennies.game"), "--mu",
                      data_path("mp_uniform.mu")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json_of(r);
  EXPECT_TRUE(doc["ce"].get<bool>());
  EXPECT_FALSE(doc["strict"].get<bool>());
  EXPECT_TRUE(doc["product_form"].get<bool>());
  EXPECT_TRUE(doc["nash"].get<bool>());
  EXPECT_TRUE(doc["quasi_strict"].get<bool>());

  const auto p = run({"--json", "certify", data_path("matching_pennies.game"), "--profile",
                      data_path("mp_uniform.profile")});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_TRUE(json_of(p)["nash"].get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"reduce", data_path("matching_pennies_rescaled.game"), "--alpha",
                 data_path("mp_uniform.alpha")}).code, 1);
  EXPECT_EQ(run({"info", data_path("no_such.game")}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"duals", "--mode", "zero-sum", data_path("coordination.game")}).code, 1);
  const auto tmp = std::filesystem::temp_directory_path() / "dualred_bad.game";
  std::ofstream(tmp) << "game bad\nplayers 2\nactions 2 2\npayoffs\n1 1\n";
  const auto bad = run({"info", tmp.string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line"), std::string::npos) << bad.err;
  std::filesystem::remove(tmp);
}

TEST(Cli, Subcommands) {
  const auto mp = data_path("matching_pennies.game");
  for (const char* mode : {"trivial", "full", "strong", "strong-full", "zero-sum", "redundancy"}) {
    const auto r = run({"--json", "duals", "--mode", mode, mp});
    ASSERT_EQ(r.code, 0) << mode << r.err;
    EXPECT_TRUE(json_of(r)["dual_vector"]["is_dual_vector"].get<bool>()) << mode;
  }
  const auto info = run({"--json", "info", mp});
  ASSERT_EQ(info.code, 0) << info.err;
  EXPECT_EQ(json_of(info)["ce"]["dimension"], 0);
  const auto ce = run({"--json", "ce", data_path("weak_dominance.game")});
  ASSERT_EQ(ce.code, 0) << ce.err;
  EXPECT_TRUE(json_of(ce)["verified"].get<bool>());
  const auto nash = run({"--json", "nash", "--conditions", mp});
  ASSERT_EQ(nash.code, 0) << nash.err;
  EXPECT_TRUE(json_of(nash)["conditions"]["a"].get<bool>());
  const auto text = run({"iterate", "--policy", "strong-full", mp});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_FALSE(text.out.empty());
}

TEST(Cli, GenAndDeterminism) {
  const auto a = run({"gen", "--seed", "7", "--actions", "2", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(dualred::parse_game(a.out), dualred::gen_game(7, {2, 2}, -5, 5));
  const auto z = run({"gen", "--seed", "3", "--actions", "2", "3", "--kind", "zero-sum",
                      "--range", "-2", "2"});
  ASSERT_EQ(z.code, 0) << z.err;
  EXPECT_EQ(dualred::parse_game(z.out), dualred::gen_zero_sum(3, 2, 3, -2, 2));

  const auto wd = data_path("weak_dominance.game");
  const auto first = run({"--json", "iterate", wd});
  const auto second = run({"--json", "iterate", wd});
  EXPECT_EQ(first.out, second.out);
  no_floats(json_of(first));
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "dualred_out.json";
  const auto r = run({"--json", "--out", path.string(), "info", data_path("coordination.game")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_NO_THROW(nlohmann::json::parse(in));
  std::filesystem::remove(path);
}
