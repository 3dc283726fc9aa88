#include "dualred/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "dualred/ce.hpp"
#include "dualred/dual.hpp"
#include "dualred/errors.hpp"
#include "dualred/game_io.hpp"
#include "dualred/nash.hpp"
#include "dualred/reduction.hpp"
#include "dualred/report.hpp"

namespace dualred {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Game load_game(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_game(text);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), e.message() + " in " + path);
  }
}

DeviationProfile parse_alpha(const std::string& path, const Game& game) {
  std::istringstream in(read_file(path));
  std::vector<Rational> values;
  std::string tok;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    while (ls >> tok) values.push_back(parse_rational(tok));
  }
  DeviationProfile alpha;
  std::size_t pos = 0;
  for (auto m : game.action_counts()) {
    if (values.size() < pos + m * m) {
      throw std::invalid_argument("deviation profile file has too few entries");
    }
    alpha.emplace_back(m, std::vector<Rational>(values.begin() + static_cast<std::ptrdiff_t>(pos),
                                                values.begin() + static_cast<std::ptrdiff_t>(pos + m * m)));
    pos += m * m;
  }
  if (pos != values.size()) throw std::invalid_argument("deviation profile file has extra entries");
  return alpha;
}

struct DualChoice {
  DeviationProfile alpha;
  Json extra = Json::object();
};

DualChoice dual_for_mode(const Game& game, const std::string& mode,
                         std::optional<std::uint64_t> seed) {
  DualChoice out;
  if (mode == "trivial") {
    out.alpha = trivial_dual_vector(game);
  } else if (mode == "full") {
    out.alpha = full_dual_vector(game, {seed});
    Json support = Json::array();
    for (const auto& d : component_support(game)) {
      if (d.from != d.to) {
        support.push_back({{"player", d.player + 1},
                           {"from", game.label(d.player, d.from)},
                           {"to", game.label(d.player, d.to)}});
      }
    }
    out.extra["support"] = std::move(support);
  } else if (mode == "strong") {
    out.alpha = strong_dual_vector(game);
  } else if (mode == "strong-full") {
    out.alpha = strong_full_dual_vector(game, {seed});
  } else if (mode == "zero-sum") {
    const auto s = solve_zero_sum(game);
    out.alpha = zero_sum_dual_vector(game, s.row, s.column);
    out.extra["value"] = to_string(s.value);
    out.extra["optimal"] = mixed_profile_json(game, {s.row, s.column});
  } else if (mode == "redundancy") {
    auto r = redundancy_dual_vector(game);
    out.alpha = std::move(r.alpha);
    Json removed = Json::array();
    for (std::size_t i = 0; i < r.removed.size(); ++i) {
      Json names = Json::array();
      for (auto a : r.removed[i]) names.push_back(game.label(i, a));
      removed.push_back(std::move(names));
    }
    out.extra["removed"] = std::move(removed);
  } else {
    throw std::invalid_argument("unknown mode '" + mode + "'");
  }
  return out;
}

bool is_product_form(const Game& game, const CorrelatedStrategy& mu, MixedProfile& marginals) {
  marginals.assign(game.num_players(), {});
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    marginals[i].assign(game.num_actions(i), Rational(0));
    for (std::size_t c = 0; c < mu.size(); ++c) marginals[i][game.action_in(c, i)] += mu[c];
  }
  return product_distribution(game, marginals) == mu;
}

const std::vector<std::string> kModes = {"trivial",  "full",     "strong",
                                         "strong-full", "zero-sum", "redundancy"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact correlated-equilibrium analysis and dual reduction of finite games",
               "dualred"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  std::string out_path;
  std::optional<std::size_t> max_size;
  app.add_flag("--json", json, "Emit a JSON report");
  app.add_option("--out", out_path, "Write the report to a file");
  app.add_option("--max-size", max_size, "Strategies per player allowed in Nash enumeration");

  std::string game_path;
  std::string mode = "full";
  std::string policy = "full";
  std::string alpha_path;
  std::string profile_path;
  std::string mu_path;
  std::optional<std::uint64_t> seed;
  bool emit_game = false;

  auto* info = app.add_subcommand("info", "Classify the correlated equilibrium polytope");
  info->add_option("game", game_path, "Game file")->required();

  auto* ce = app.add_subcommand("ce", "Relative-interior CE and jeopardy graph");
  ce->add_option("game", game_path, "Game file")->required();

  auto* duals = app.add_subcommand("duals", "Compute a dual vector and its gains");
  duals->add_option("game", game_path, "Game file")->required();
  duals->add_option("--mode", mode, "Dual vector construction")
      ->check(CLI::IsMember(kModes));
  duals->add_option("--seed", seed, "Seed for an independent full dual vector");

  auto* reduce_cmd = app.add_subcommand("reduce", "One dual reduction stage");
  reduce_cmd->add_option("game", game_path, "Game file")->required();
  auto* mode_opt = reduce_cmd->add_option("--mode", mode, "Dual vector construction")
                       ->check(CLI::IsMember(kModes));
  reduce_cmd->add_option("--alpha", alpha_path, "Deviation profile file")->excludes(mode_opt);
  reduce_cmd->add_option("--seed", seed, "Seed for an independent full dual vector");
  reduce_cmd->add_flag("--emit-game", emit_game, "Print the reduced game in file format");

  auto* iterate = app.add_subcommand("iterate", "Iterate dual reduction to an elementary game");
  iterate->add_option("game", game_path, "Game file")->required();
  iterate->add_option("--policy", policy, "Dual vector at each stage")
      ->check(CLI::IsMember({"full", "strong-full"}));
  iterate->add_option("--seed", seed, "Seed for independent full dual vectors");

  auto* certify = app.add_subcommand("certify", "Certify a mixed profile or correlated strategy");
  certify->add_option("game", game_path, "Game file")->required();
  auto* prof_opt = certify->add_option("--profile", profile_path, "Mixed profile file");
  auto* mu_opt = certify->add_option("--mu", mu_path, "Correlated strategy file");
  prof_opt->excludes(mu_opt);

  auto* nash = app.add_subcommand("nash", "Nash equilibria and genericity conditions");
  nash->add_option("game", game_path, "Game file")->required();
  bool conditions = false;
  nash->add_flag("--conditions", conditions, "Check conditions (a), (b), (c)");

  auto* gen = app.add_subcommand("gen", "Generate a seeded random game");
  std::uint64_t gen_seed = 0;
  std::vector<std::size_t> gen_actions;
  std::vector<long> gen_range{-5, 5};
  std::string gen_kind = "general";
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--actions", gen_actions, "Strategies per player")->required();
  gen->add_option("--range", gen_range, "Inclusive integer payoff range")->expected(2);
  gen->add_option("--kind", gen_kind, "Game family")
      ->check(CLI::IsMember({"general", "zero-sum", "symmetric"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Json doc;
    std::string text;
    if (gen->parsed()) {
      Game g = [&] {
        if (gen_kind == "zero-sum") {
          if (gen_actions.size() != 2) throw std::invalid_argument("zero-sum games have two players");
          return gen_zero_sum(gen_seed, gen_actions[0], gen_actions[1], gen_range[0], gen_range[1]);
        }
        if (gen_kind == "symmetric") {
          for (auto m : gen_actions) {
            if (m != gen_actions.front()) {
              throw std::invalid_argument("symmetric games need equal action counts");
            }
          }
          return gen_cyclic_symmetric(gen_seed, gen_actions.size(), gen_actions.front(),
                                      gen_range[0], gen_range[1]);
        }
        return gen_game(gen_seed, gen_actions, gen_range[0], gen_range[1]);
      }();
      if (json) {
        doc = game_json(g);
      } else {
        text = write_game(g);
      }
    } else {
      const Game game = load_game(game_path);
      if (info->parsed()) {
        auto report = ce_report_json(game, analyze_ce(game));
        report.erase("witness_ce");
        doc = {{"game", {{"name", game.name()},
                         {"players", game.num_players()},
                         {"actions", game.action_counts()},
                         {"profiles", game.num_profiles()}}},
               {"ce", std::move(report)}};
      } else if (ce->parsed()) {
        const auto report = analyze_ce(game);
        const auto check = is_correlated_equilibrium(game, report.witness_ce);
        if (!check.is_equilibrium) throw InternalError("witness CE failed verification");
        auto r = ce_report_json(game, report);
        doc = {{"witness_ce", correlated_json(game, report.witness_ce)},
               {"verified", check.is_equilibrium},
               {"jeopardy", r["jeopardy"]},
               {"zero_profiles", r["zero_profiles"]}};
      } else if (duals->parsed()) {
        auto choice = dual_for_mode(game, mode, seed);
        doc = {{"mode", mode}, {"dual_vector", dual_json(game, choice.alpha)}};
        for (auto& [k, v] : choice.extra.items()) doc[k] = v;
      } else if (reduce_cmd->parsed()) {
        DualChoice choice;
        std::string used = mode;
        if (!alpha_path.empty()) {
          choice.alpha = parse_alpha(alpha_path, game);
          used = "custom";
        } else {
          choice = dual_for_mode(game, mode, seed);
        }
        const auto reduced = reduce(game, choice.alpha);
        if (emit_game && !json) {
          text = write_game(reduced.game);
        } else {
          doc = {{"mode", used},
                 {"dual_vector", dual_json(game, choice.alpha)},
                 {"reduced", reduced_json(reduced)}};
          for (auto& [k, v] : choice.extra.items()) doc[k] = v;
        }
      } else if (iterate->parsed()) {
        const PolicyKind kind = policy == "full" ? PolicyKind::Full : PolicyKind::StrongFull;
        const ReductionPolicy chosen{kind, seed};
        const auto trace = iterate_to_elementary(game, chosen);
        doc = trace_json(trace, kind);
        Json warnings = Json::array();
        for (auto k : nonunique_stages(trace, chosen)) {
          warnings.push_back("stage " + std::to_string(k + 1) +
                             ": another full dual vector gives different stationary weights; "
                             "full reductions of this game are not unique");
        }
        doc["warnings"] = std::move(warnings);
      } else if (certify->parsed()) {
        if (profile_path.empty() && mu_path.empty()) {
          throw std::invalid_argument("certify needs --profile or --mu");
        }
        if (!profile_path.empty()) {
          const auto sigma = parse_mixed_profile(read_file(profile_path), game);
          const bool nash_ok = is_nash(game, sigma);
          const auto mu = product_distribution(game, sigma);
          const bool ce_ok = is_correlated_equilibrium(game, mu).is_equilibrium;
          doc = {{"profile", mixed_profile_json(game, sigma)},
                 {"nash", nash_ok},
                 {"quasi_strict", nash_ok ? Json(is_quasi_strict(game, sigma)) : Json(nullptr)},
                 {"ce", ce_ok},
                 {"strict", ce_ok ? Json(is_strict_ce(game, mu)) : Json(nullptr)}};
        } else {
          const auto mu = parse_correlated(read_file(mu_path), game);
          const auto check = is_correlated_equilibrium(game, mu);
          Json violated = Json::array();
          for (const auto& d : check.violated) {
            violated.push_back({{"player", d.player + 1},
                                {"from", game.label(d.player, d.from)},
                                {"to", game.label(d.player, d.to)}});
          }
          MixedProfile marginals;
          const bool product = is_product_form(game, mu, marginals);
          const bool nash_ok = product && is_nash(game, marginals);
          doc = {{"ce", check.is_equilibrium},
                 {"violated", std::move(violated)},
                 {"strict", check.is_equilibrium ? Json(is_strict_ce(game, mu)) : Json(nullptr)},
                 {"product_form", product},
                 {"nash", product ? Json(nash_ok) : Json(nullptr)},
                 {"quasi_strict",
                  nash_ok ? Json(is_quasi_strict(game, marginals)) : Json(nullptr)}};
        }
      } else if (nash->parsed()) {
        if (game.num_players() == 2) {
          doc = {{"nash", nash_json(game, bimatrix_nash(game, max_size.value_or(5)))}};
          if (conditions) {
            doc["conditions"] = conditions_json(game, check_conditions_abc(game, max_size.value_or(4)));
          }
        } else {
          if (conditions) throw AnalysisError("conditions (a)-(c) need a two-player game");
          doc = {{"nash", nash_json(game, pure_nash(game))}};
        }
      }
    }
    if (text.empty()) text = json ? doc.dump(2) + "\n" : render_text(doc);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f || !(f << text)) throw IoError("cannot write '" + out_path + "'");
    }
    return 0;
  } catch (const AnalysisError& e) {
    err << "dualred: refused: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "dualred: parse error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "dualred: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "dualred: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "dualred: internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace dualred
