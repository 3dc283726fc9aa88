#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dualred/ce.hpp"
#include "dualred/cli.hpp"
#include "dualred/dual.hpp"
#include "dualred/errors.hpp"
#include "dualred/game_io.hpp"
#include "dualred/nash.hpp"
#include "dualred/reduction.hpp"

namespace py = pybind11;
using namespace dualred;

// Rationals cross the boundary as fractions.Fraction; ints and strings such
// as "3/4" are accepted on input.
namespace pybind11::detail {
template <>
struct type_caster<mpq_class> {
  PYBIND11_TYPE_CASTER(mpq_class, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      std::string text;
      if (py::isinstance<py::str>(src)) {
        text = src.cast<std::string>();
      } else if (py::isinstance<py::int_>(src) ||
                 py::isinstance(src, py::module_::import("fractions").attr("Fraction"))) {
        text = py::str(src).cast<std::string>();
      } else {
        return false;
      }
      value = parse_rational(text);
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }

  static handle cast(const mpq_class& v, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(to_string(v)).release();
  }
};
}  // namespace pybind11::detail

namespace {

using PlanRows = std::vector<std::vector<std::vector<Rational>>>;

PlanRows to_rows(const DeviationProfile& alpha) {
  PlanRows out;
  for (const auto& plan : alpha) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t from = 0; from < plan.size(); ++from) rows.push_back(plan.image(from));
    out.push_back(std::move(rows));
  }
  return out;
}

DeviationProfile from_rows(const PlanRows& rows) {
  DeviationProfile alpha;
  for (const auto& r : rows) alpha.push_back(DeviationPlan::from_rows(r));
  return alpha;
}

py::dict ce_dict(const Game& game) {
  const auto r = analyze_ce(game);
  py::dict d;
  d["elementary"] = r.is_elementary;
  d["tight"] = r.is_tight;
  d["pretight"] = r.is_pretight;
  d["dimension"] = r.dimension;
  d["coherent"] = r.coherent;
  d["zero_profiles"] = r.zero_profiles;
  py::list edges;
  for (const auto& e : r.jeopardy.nontrivial_edges()) edges.append(py::make_tuple(e.player, e.from, e.to));
  d["jeopardy"] = edges;
  d["witness_ce"] = r.witness_ce;
  return d;
}

py::tuple support_tuples(const std::vector<Deviation>& ds) {
  py::list out;
  for (const auto& d : ds) out.append(py::make_tuple(d.player, d.from, d.to));
  return py::tuple(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact correlated-equilibrium analysis and dual reduction of finite games";

  py::register_exception<AnalysisError>(m, "AnalysisError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Game>(m, "Game")
      .def(py::init<std::string, std::vector<std::vector<std::string>>, std::vector<Rational>>(),
           py::arg("name"), py::arg("labels"), py::arg("payoffs"))
      .def_property_readonly("name", &Game::name)
      .def_property_readonly("num_players", &Game::num_players)
      .def_property_readonly("action_counts", &Game::action_counts)
      .def_property_readonly("num_profiles", &Game::num_profiles)
      .def_property_readonly("labels", &Game::labels)
      .def("payoff",
           [](const Game& g, const Profile& c, std::size_t i) { return g.payoff(c, i); })
      .def("profile_at", &Game::profile_at)
      .def("index_of", &Game::index_of)
      .def("__eq__", [](const Game& a, const Game& b) { return a == b; })
      .def("__repr__", [](const Game& g) {
        std::ostringstream s;
        s << "<Game '" << g.name() << "' with " << g.num_players() << " players>";
        return s.str();
      });

  m.def("parse_game", [](const std::string& text) { return parse_game(text); });
  m.def("write_game", &write_game);
  m.def("gen_game", &gen_game, py::arg("seed"), py::arg("action_counts"), py::arg("lo"),
        py::arg("hi"));

  m.def("analyze_ce", &ce_dict);
  m.def("is_correlated_equilibrium", [](const Game& g, const CorrelatedStrategy& mu) {
    return is_correlated_equilibrium(g, mu).is_equilibrium;
  });
  m.def("jeopardizes", &jeopardizes);
  m.def("coherent_strategies", &coherent_strategies);
  m.def("zero_probability_profiles", &zero_probability_profiles);
  m.def("is_elementary", [](const Game& g) { return is_elementary(g).elementary; });
  m.def("ce_dimension", &ce_dimension);

  m.def("trivial_dual_vector", [](const Game& g) { return to_rows(trivial_dual_vector(g)); });
  m.def(
      "full_dual_vector",
      [](const Game& g, std::optional<std::uint64_t> seed) {
        return to_rows(full_dual_vector(g, {seed}));
      },
      py::arg("game"), py::arg("seed") = py::none());
  m.def("strong_dual_vector", [](const Game& g) { return to_rows(strong_dual_vector(g)); });
  m.def(
      "strong_full_dual_vector",
      [](const Game& g, std::optional<std::uint64_t> seed) {
        return to_rows(strong_full_dual_vector(g, {seed}));
      },
      py::arg("game"), py::arg("seed") = py::none());
  m.def("zero_sum_dual_vector", [](const Game& g) { return to_rows(zero_sum_dual_vector(g)); });
  m.def("redundancy_dual_vector", [](const Game& g) {
    auto r = redundancy_dual_vector(g);
    return py::make_tuple(to_rows(r.alpha), r.removed);
  });
  m.def("component_support", [](const Game& g) { return support_tuples(component_support(g)); });
  m.def("is_dual_vector", [](const Game& g, const PlanRows& a) {
    return is_dual_vector(g, from_rows(a)).is_dual_vector;
  });
  m.def("gains", [](const Game& g, const PlanRows& a) { return gains(g, from_rows(a)).total; });

  py::class_<ReducedGame>(m, "ReducedGame")
      .def_readonly("base", &ReducedGame::base)
      .def_readonly("game", &ReducedGame::game)
      .def_readonly("reduced_actions", &ReducedGame::reduced_actions)
      .def_property_readonly("classification",
                             [](const ReducedGame& r) {
                               std::vector<std::vector<std::string>> out;
                               for (const auto& player : r.classification) {
                                 std::vector<std::string> s;
                                 for (const auto& c : player) s.emplace_back(to_string(c.status));
                                 out.push_back(std::move(s));
                               }
                               return out;
                             })
      .def("lift", [](const ReducedGame& r, const CorrelatedStrategy& mu) { return lift(r, mu); });

  m.def("reduce", [](const Game& g, const PlanRows& a) { return reduce(g, from_rows(a)); });

  py::class_<ReductionTrace>(m, "Trace")
      .def_property_readonly("stages",
                             [](const ReductionTrace& t) {
                               std::vector<ReducedGame> out;
                               for (const auto& s : t.stages) out.push_back(s.reduced);
                               return out;
                             })
      .def_readonly("terminal", &ReductionTrace::terminal)
      .def_readonly("terminal_elementary", &ReductionTrace::terminal_elementary)
      .def("lift_to_base", [](const ReductionTrace& t, const CorrelatedStrategy& mu) {
        return t.lift_to_base(mu);
      });

  m.def(
      "iterate_to_elementary",
      [](const Game& g, const std::string& policy, std::optional<std::uint64_t> seed) {
        if (policy != "full" && policy != "strong-full") {
          throw std::invalid_argument("policy must be 'full' or 'strong-full'");
        }
        return iterate_to_elementary(
            g, {policy == "full" ? PolicyKind::Full : PolicyKind::StrongFull, seed});
      },
      py::arg("game"), py::arg("policy") = "full", py::arg("seed") = py::none());

  m.def("is_nash", &is_nash);
  m.def("is_quasi_strict", &is_quasi_strict);
  m.def("pure_nash", [](const Game& g) { return pure_nash(g).equilibria; });
  m.def(
      "bimatrix_nash",
      [](const Game& g, std::size_t max_actions) {
        auto r = bimatrix_nash(g, max_actions);
        return py::make_tuple(r.equilibria, r.degenerate);
      },
      py::arg("game"), py::arg("max_actions") = 5);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "dualred");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
