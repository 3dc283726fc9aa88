#include "dualred/report.hpp"

#include <sstream>

namespace dualred {

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(const Distribution& weights) {
  Json out = Json::array();
  for (const auto& w : weights) out.push_back(to_string(w));
  return out;
}

Json profile_json(const Game& game, std::size_t profile) {
  Json out = Json::array();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    out.push_back(game.label(i, game.action_in(profile, i)));
  }
  return out;
}

Json mixed_profile_json(const Game& game, const MixedProfile& sigma) {
  Json out = Json::array();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    Json s = Json::object();
    for (std::size_t a = 0; a < sigma[i].size(); ++a) {
      if (sgn(sigma[i][a]) != 0) s[game.label(i, a)] = to_string(sigma[i][a]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

Json correlated_json(const Game& game, const CorrelatedStrategy& mu) {
  Json out = Json::array();
  for (std::size_t c = 0; c < mu.size(); ++c) {
    if (sgn(mu[c]) == 0) continue;
    out.push_back({{"profile", profile_json(game, c)}, {"weight", to_string(mu[c])}});
  }
  return out;
}

Json game_json(const Game& game) {
  Json payoffs = Json::array();
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    Json row = Json::array();
    for (std::size_t i = 0; i < game.num_players(); ++i) row.push_back(to_string(game.payoff(c, i)));
    payoffs.push_back(std::move(row));
  }
  return {{"name", game.name()},
          {"players", game.num_players()},
          {"actions", game.action_counts()},
          {"labels", game.labels()},
          {"payoffs", std::move(payoffs)}};
}

namespace {

Json label_sets(const Game& game, const std::vector<std::vector<std::size_t>>& sets) {
  Json out = Json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Json s = Json::array();
    for (auto a : sets[i]) s.push_back(game.label(i, a));
    out.push_back(std::move(s));
  }
  return out;
}

Json deviation_json(const Game& game, const Deviation& d) {
  return {{"player", d.player + 1},
          {"from", game.label(d.player, d.from)},
          {"to", game.label(d.player, d.to)}};
}

}  // namespace

Json ce_report_json(const Game& game, const CeReport& report) {
  Json zero = Json::array();
  for (auto c : report.zero_profiles) zero.push_back(profile_json(game, c));
  Json edges = Json::array();
  for (const auto& d : report.jeopardy.nontrivial_edges()) edges.push_back(deviation_json(game, d));
  return {{"elementary", report.is_elementary},
          {"tight", report.is_tight},
          {"pretight", report.is_pretight},
          {"dimension", report.dimension},
          {"coherent", label_sets(game, report.coherent)},
          {"zero_profiles", std::move(zero)},
          {"jeopardy", std::move(edges)},
          {"witness_ce", to_json(report.witness_ce)}};
}

Json dual_json(const Game& game, const DeviationProfile& alpha) {
  Json plans = Json::array();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Json rows = Json::object();
    for (std::size_t from = 0; from < alpha[i].size(); ++from) {
      Json image = Json::object();
      for (std::size_t to = 0; to < alpha[i].size(); ++to) {
        if (sgn(alpha[i](from, to)) != 0) image[game.label(i, to)] = to_string(alpha[i](from, to));
      }
      rows[game.label(i, from)] = std::move(image);
    }
    plans.push_back(std::move(rows));
  }
  const auto table = gains(game, alpha);
  Json g = Json::array();
  bool dual = true;
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    Json per = Json::array();
    for (std::size_t i = 0; i < game.num_players(); ++i) per.push_back(to_string(table.gain(c, i)));
    dual = dual && sgn(table.total[c]) >= 0;
    g.push_back({{"profile", profile_json(game, c)},
                 {"per_player", std::move(per)},
                 {"total", to_string(table.total[c])}});
  }
  return {{"plans", std::move(plans)}, {"gains", std::move(g)}, {"is_dual_vector", dual}};
}

Json reduced_json(const ReducedGame& reduced) {
  const Game& base = reduced.base;
  Json actions = Json::array();
  Json classes = Json::array();
  for (std::size_t i = 0; i < base.num_players(); ++i) {
    Json acts = Json::array();
    for (std::size_t k = 0; k < reduced.reduced_actions[i].size(); ++k) {
      Json weights = Json::object();
      for (std::size_t a = 0; a < base.num_actions(i); ++a) {
        const auto& w = reduced.reduced_actions[i][k][a];
        if (sgn(w) != 0) weights[base.label(i, a)] = to_string(w);
      }
      acts.push_back({{"label", reduced.game.label(i, k)}, {"weights", std::move(weights)}});
    }
    actions.push_back(std::move(acts));
    Json cls = Json::object();
    for (std::size_t a = 0; a < base.num_actions(i); ++a) {
      const auto& sc = reduced.classification[i][a];
      cls[base.label(i, a)] = {
          {"status", to_string(sc.status)},
          {"reduced_action", sc.reduced_action ? Json(reduced.game.label(i, *sc.reduced_action))
                                               : Json(nullptr)}};
    }
    classes.push_back(std::move(cls));
  }
  return {{"game", game_json(reduced.game)},
          {"actions", std::move(actions)},
          {"classification", std::move(classes)},
          {"category", to_string(categorize(reduced))}};
}

Json trace_json(const ReductionTrace& trace, PolicyKind policy) {
  Json stages = Json::array();
  for (std::size_t k = 0; k < trace.stages.size(); ++k) {
    const auto& s = trace.stages[k];
    stages.push_back({{"stage", k + 1},
                      {"input", s.game.name()},
                      {"dual_vector", dual_json(s.game, s.alpha)},
                      {"reduced", reduced_json(s.reduced)}});
  }
  const Game& base = trace.stages.empty() ? trace.terminal : trace.stages.front().game;
  Json out = {{"policy", to_string(policy)},
              {"stages", std::move(stages)},
              {"terminal", game_json(trace.terminal)},
              {"terminal_elementary", trace.terminal_elementary}};
  if (trace.terminal.num_profiles() == 1) {
    MixedProfile point;
    for (std::size_t i = 0; i < trace.terminal.num_players(); ++i) point.push_back({Rational(1)});
    out["terminal_equilibrium"] = mixed_profile_json(base, trace.lift_to_base(point));
  }
  return out;
}

Json nash_json(const Game& game, const NashReport& report) {
  Json eqs = Json::array();
  for (const auto& s : report.equilibria) eqs.push_back(mixed_profile_json(game, s));
  return {{"method", to_string(report.method)},
          {"degenerate", report.degenerate},
          {"exact", report.exact},
          {"equilibria", std::move(eqs)}};
}

Json conditions_json(const Game& game, const ConditionsReport& report) {
  auto example = [&](const std::optional<Counterexample>& e) -> Json {
    if (!e) return nullptr;
    Json out = {{"description", e->description}};
    if (e->profile) out["profile"] = mixed_profile_json(game, *e->profile);
    if (e->block) out["block"] = label_sets(game, e->block->sets);
    return out;
  };
  return {{"a", report.a},
          {"b", report.b},
          {"c", report.c},
          {"a_counterexample", example(report.a_example)},
          {"b_counterexample", example(report.b_example)},
          {"c_counterexample", example(report.c_example)}};
}

namespace {

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool flat_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (!is_scalar(e)) return false;
  }
  return true;
}

std::string flat_text(const Json& v) {
  std::string s;
  for (const auto& e : v) {
    if (!s.empty()) s += ' ';
    s += scalar_text(e);
  }
  return s.empty() ? "(none)" : s;
}

void render(const Json& v, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (is_scalar(value)) {
        out << pad << key << ": " << scalar_text(value) << '\n';
      } else if (flat_array(value)) {
        out << pad << key << ": " << flat_text(value) << '\n';
      } else if (value.empty()) {
        out << pad << key << ": (none)\n";
      } else {
        out << pad << key << ":\n";
        render(value, indent + 1, out);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (is_scalar(e)) {
        out << pad << "- " << scalar_text(e) << '\n';
      } else if (flat_array(e)) {
        out << pad << "- " << flat_text(e) << '\n';
      } else {
        out << pad << "-\n";
        render(e, indent + 1, out);
      }
    }
  } else {
    out << pad << scalar_text(v) << '\n';
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream out;
  render(doc, 0, out);
  return out.str();
}

}  // namespace dualred
