#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualred/rational.hpp"

namespace dualred {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation;
  Rational rhs;
};

/// Linear program over exact rationals. Variables are free unless given a
/// lower bound. The objective defaults to zero, so a LinearProgram also
/// serves as the description of its feasible region.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars = 0);

  std::size_t num_vars() const { return names_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  /// Appends a variable; existing rows get a zero coefficient.
  std::size_t add_variable(std::string name = {});
  std::size_t add_constraint(std::vector<Rational> coeffs, Relation relation,
                             Rational rhs);
  void set_lower_bound(std::size_t var, Rational bound);
  void set_objective(std::vector<Rational> coeffs, Sense sense);
  void set_name(std::size_t var, std::string name) { names_.at(var) = std::move(name); }

  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Constraint& constraint(std::size_t k) const { return constraints_.at(k); }
  const std::vector<std::optional<Rational>>& lower_bounds() const { return lower_; }
  const std::vector<Rational>& objective() const { return objective_; }
  Sense sense() const { return sense_; }
  const std::vector<std::string>& names() const { return names_; }

  /// b - a.x for `<=` rows, a.x - b for `>=` rows, b - a.x for `=` rows.
  Rational slack(std::size_t row, const std::vector<Rational>& x) const;
  Rational objective_value(const std::vector<Rational>& x) const;
  bool is_feasible(const std::vector<Rational>& x) const;

 private:
  std::vector<std::string> names_;
  std::vector<Constraint> constraints_;
  std::vector<std::optional<Rational>> lower_;
  std::vector<Rational> objective_;
  Sense sense_ = Sense::Maximize;
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;
};

/// Two-phase dense simplex with Bland's least-index rule. Deterministic: equal
/// inputs give equal outcomes, witness point included.
LpOutcome solve(const LinearProgram& lp);

/// The LP dual of `lp`: one variable per constraint, then one per lower
/// bound. Its optimal value equals the primal optimum, negated when the
/// primal minimizes.
LinearProgram dual_program(const LinearProgram& lp);

/// Solves the dual independently and checks that its value matches and that
/// complementary slackness holds exactly against `outcome.point`.
bool certify_optimal(const LinearProgram& lp, const LpOutcome& outcome);

struct ImplicitEqualities {
  std::vector<std::size_t> rows;    ///< inequality constraints tight on the region
  std::vector<std::size_t> bounds;  ///< variables pinned at their lower bound
  std::vector<Rational> interior;   ///< a point in the relative interior
};

/// Detects inequality rows that hold with equality on the whole region, by
/// maximizing each row's slack. Throws AnalysisError on an empty region.
ImplicitEqualities implicit_equalities(const LinearProgram& region);

/// Dimension of the affine hull of the region; -1 when it is empty.
long affine_dimension(const LinearProgram& region);

struct SlackOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational t;
  std::vector<Rational> point;
};

/// Maximizes t subject to slack(row) >= t for every selected row, with t
/// bounded above by `cap` when given. Throws AnalysisError if the region is
/// empty.
SlackOutcome max_min_slack(const LinearProgram& region,
                           const std::vector<std::size_t>& rows,
                           std::optional<Rational> cap = Rational(1));

}  // namespace dualred
