#include "dualred/lp.hpp"

#include <limits>
#include <stdexcept>

#include "dualred/errors.hpp"
#include "dualred/linalg.hpp"

namespace dualred {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

LinearProgram::LinearProgram(std::size_t num_vars)
    : names_(num_vars), lower_(num_vars), objective_(num_vars, Rational(0)) {}

std::size_t LinearProgram::add_variable(std::string name) {
  names_.push_back(std::move(name));
  lower_.emplace_back();
  objective_.emplace_back(0);
  for (auto& c : constraints_) c.coeffs.emplace_back(0);
  return names_.size() - 1;
}

std::size_t LinearProgram::add_constraint(std::vector<Rational> coeffs,
                                          Relation relation, Rational rhs) {
  if (coeffs.size() != num_vars()) {
    throw std::invalid_argument("constraint row has " + std::to_string(coeffs.size()) +
                                " coefficients, expected " + std::to_string(num_vars()));
  }
  constraints_.push_back({std::move(coeffs), relation, std::move(rhs)});
  return constraints_.size() - 1;
}

void LinearProgram::set_lower_bound(std::size_t var, Rational bound) {
  lower_.at(var) = std::move(bound);
}

void LinearProgram::set_objective(std::vector<Rational> coeffs, Sense sense) {
  if (coeffs.size() != num_vars()) {
    throw std::invalid_argument("objective has wrong length");
  }
  objective_ = std::move(coeffs);
  sense_ = sense;
}

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (sgn(a[j]) != 0 && sgn(x[j]) != 0) s += a[j] * x[j];
  }
  return s;
}

}  // namespace

Rational LinearProgram::slack(std::size_t row, const std::vector<Rational>& x) const {
  const auto& c = constraints_.at(row);
  const Rational ax = dot(c.coeffs, x);
  return c.relation == Relation::GreaterEqual ? Rational(ax - c.rhs)
                                              : Rational(c.rhs - ax);
}

Rational LinearProgram::objective_value(const std::vector<Rational>& x) const {
  return dot(objective_, x);
}

bool LinearProgram::is_feasible(const std::vector<Rational>& x) const {
  if (x.size() != num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (lower_[j] && x[j] < *lower_[j]) return false;
  }
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    const Rational s = slack(k, x);
    if (constraints_[k].relation == Relation::Equal ? sgn(s) != 0 : sgn(s) < 0) {
      return false;
    }
  }
  return true;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau over nonnegative columns. The last entry of every row is
// the right-hand side.
class Simplex {
 public:
  Simplex(std::size_t rows, std::size_t cols)
      : t_(rows, std::vector<Rational>(cols + 1)), basis_(rows, kNone), cols_(cols) {}

  std::vector<std::vector<Rational>>& rows() { return t_; }
  std::vector<std::size_t>& basis() { return basis_; }

  // Installs the relative-profit row for maximizing `cost` over columns.
  void set_cost(const std::vector<Rational>& cost) {
    profit_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) profit_[j] = cost[j];
    for (std::size_t r = 0; r < t_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[r][j]) != 0) profit_[j] -= cb * t_[r][j];
      }
    }
  }

  // Runs Bland's rule over columns [0, allowed). Returns false if unbounded.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (sgn(profit_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t r = 0; r < t_.size(); ++r) {
        if (sgn(t_[r][enter]) <= 0) continue;
        Rational ratio = t_[r][cols_] / t_[r][enter];
        if (leave == kNone || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    auto& prow = t_[r];
    const Rational inv = 1 / prow[e];
    for (auto& v : prow) {
      if (sgn(v) != 0) v *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(prow[j]) != 0) nz.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[e]) == 0) return;
      const Rational f = row[e];
      for (auto j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    if (!profit_.empty()) eliminate(profit_);
    basis_[r] = e;
  }

  // Objective value of the current basic solution (profit row holds -z).
  Rational value() const { return -profit_[cols_]; }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  std::vector<Rational> column_values() const {
    std::vector<Rational> v(cols_, Rational(0));
    for (std::size_t r = 0; r < t_.size(); ++r) v[basis_[r]] = t_[r][cols_];
    return v;
  }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> profit_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  // Variable substitution: x_j = shift_j + y_pos - y_neg.
  std::vector<std::size_t> pos(n), neg(n, kNone);
  std::vector<Rational> shift(n, Rational(0));
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos[j] = structural++;
    if (lp.lower_bounds()[j]) {
      shift[j] = *lp.lower_bounds()[j];
    } else {
      neg[j] = structural++;
    }
  }

  struct Row {
    std::vector<Rational> coeffs;  // over structural columns
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  rows.reserve(lp.num_constraints());
  std::size_t slacks = 0, artificials = 0;
  for (const auto& c : lp.constraints()) {
    Row row{std::vector<Rational>(structural, Rational(0)), c.relation, c.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(c.coeffs[j]) == 0) continue;
      row.coeffs[pos[j]] = c.coeffs[j];
      if (neg[j] != kNone) row.coeffs[neg[j]] = -c.coeffs[j];
      row.rhs -= c.coeffs[j] * shift[j];
    }
    const bool flip = sgn(row.rhs) < 0 ||
                      (sgn(row.rhs) == 0 && row.rel == Relation::GreaterEqual);
    if (flip) {
      for (auto& v : row.coeffs) v = -v;
      row.rhs = -row.rhs;
      if (row.rel == Relation::LessEqual) {
        row.rel = Relation::GreaterEqual;
      } else if (row.rel == Relation::GreaterEqual) {
        row.rel = Relation::LessEqual;
      }
    }
    if (row.rel != Relation::Equal) ++slacks;
    if (row.rel != Relation::LessEqual) ++artificials;
    rows.push_back(std::move(row));
  }

  const std::size_t art_begin = structural + slacks;
  const std::size_t cols = art_begin + artificials;
  Simplex sx(rows.size(), cols);
  {
    std::size_t s = structural, a = art_begin;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto& trow = sx.rows()[r];
      for (std::size_t j = 0; j < structural; ++j) trow[j] = rows[r].coeffs[j];
      trow[cols] = rows[r].rhs;
      switch (rows[r].rel) {
        case Relation::LessEqual:
          trow[s] = 1;
          sx.basis()[r] = s++;
          break;
        case Relation::GreaterEqual:
          trow[s++] = -1;
          trow[a] = 1;
          sx.basis()[r] = a++;
          break;
        case Relation::Equal:
          trow[a] = 1;
          sx.basis()[r] = a++;
          break;
      }
    }
  }

  LpOutcome out;
  if (artificials > 0) {
    std::vector<Rational> phase1(cols, Rational(0));
    for (std::size_t j = art_begin; j < cols; ++j) phase1[j] = -1;
    sx.set_cost(phase1);
    sx.optimize(cols);
    if (sgn(sx.value()) < 0) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < sx.rows().size();) {
      if (sx.basis()[r] < art_begin) {
        ++r;
        continue;
      }
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (sgn(sx.rows()[r][j]) != 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) {
        sx.drop_row(r);
      } else {
        sx.pivot(r, enter);
        ++r;
      }
    }
  }

  std::vector<Rational> cost(cols, Rational(0));
  const bool maximize = lp.sense() == Sense::Maximize;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational f = maximize ? lp.objective()[j] : Rational(-lp.objective()[j]);
    cost[pos[j]] = f;
    if (neg[j] != kNone) cost[neg[j]] = -f;
  }
  sx.set_cost(cost);
  if (!sx.optimize(art_begin)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  const auto y = sx.column_values();
  out.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.point[j] = shift[j] + y[pos[j]];
    if (neg[j] != kNone) out.point[j] -= y[neg[j]];
  }
  out.status = LpStatus::Optimal;
  out.value = lp.objective_value(out.point);
  return out;
}

LinearProgram dual_program(const LinearProgram& lp) {
  // Primal in max form: max f.x, rows a_k x (<=,=,>=) b_k, x_j >= l_j.
  // Dual: min b.y + l.w with A^T y + w = f, y_k >= 0 on <= rows, y_k <= 0 on
  // >= rows, w_j <= 0. Nonpositive multipliers are stored negated.
  const bool maximize = lp.sense() == Sense::Maximize;
  std::vector<std::size_t> bounded;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower_bounds()[j]) bounded.push_back(j);
  }
  const std::size_t m = lp.num_constraints();
  LinearProgram dual(m + bounded.size());
  std::vector<Rational> sign(m + bounded.size(), Rational(1));
  std::vector<Rational> objective(dual.num_vars());
  for (std::size_t k = 0; k < m; ++k) {
    const auto& c = lp.constraint(k);
    if (c.relation == Relation::GreaterEqual) sign[k] = -1;
    if (c.relation != Relation::Equal) dual.set_lower_bound(k, Rational(0));
    objective[k] = sign[k] * c.rhs;
  }
  for (std::size_t b = 0; b < bounded.size(); ++b) {
    sign[m + b] = -1;
    dual.set_lower_bound(m + b, Rational(0));
    objective[m + b] = -*lp.lower_bounds()[bounded[b]];
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    std::vector<Rational> row(dual.num_vars(), Rational(0));
    for (std::size_t k = 0; k < m; ++k) row[k] = sign[k] * lp.constraint(k).coeffs[j];
    for (std::size_t b = 0; b < bounded.size(); ++b) {
      if (bounded[b] == j) row[m + b] = -1;
    }
    dual.add_constraint(std::move(row), Relation::Equal,
                        maximize ? lp.objective()[j] : Rational(-lp.objective()[j]));
  }
  dual.set_objective(std::move(objective), Sense::Minimize);
  return dual;
}

bool certify_optimal(const LinearProgram& lp, const LpOutcome& outcome) {
  if (outcome.status != LpStatus::Optimal) return false;
  if (!lp.is_feasible(outcome.point)) return false;
  if (outcome.value != lp.objective_value(outcome.point)) return false;
  const auto dual = dual_program(lp);
  const auto d = solve(dual);
  if (d.status != LpStatus::Optimal) return false;
  const Rational primal_max =
      lp.sense() == Sense::Maximize ? outcome.value : Rational(-outcome.value);
  if (d.value != primal_max) return false;
  const std::size_t m = lp.num_constraints();
  for (std::size_t k = 0; k < m; ++k) {
    if (sgn(d.point[k]) != 0 && sgn(lp.slack(k, outcome.point)) != 0) return false;
  }
  std::size_t b = m;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (!lp.lower_bounds()[j]) continue;
    if (sgn(d.point[b]) != 0 && outcome.point[j] != *lp.lower_bounds()[j]) return false;
    ++b;
  }
  return true;
}

namespace {

void require_nonempty(const LpOutcome& feasible) {
  if (feasible.status == LpStatus::Infeasible) {
    throw AnalysisError("region is empty");
  }
}

// Objective that maximizes the slack of an inequality row.
std::vector<Rational> slack_objective(const Constraint& c) {
  std::vector<Rational> f = c.coeffs;
  if (c.relation == Relation::LessEqual) {
    for (auto& v : f) v = -v;
  }
  return f;
}

}  // namespace

ImplicitEqualities implicit_equalities(const LinearProgram& region) {
  LinearProgram probe = region;
  probe.set_objective(std::vector<Rational>(region.num_vars(), Rational(0)),
                      Sense::Maximize);
  const auto first = solve(probe);
  require_nonempty(first);

  std::vector<std::vector<Rational>> witnesses{first.point};
  auto slack_seen = [&](auto&& slack_of) {
    for (const auto& w : witnesses) {
      if (sgn(slack_of(w)) > 0) return true;
    }
    return false;
  };

  ImplicitEqualities out;
  for (std::size_t k = 0; k < region.num_constraints(); ++k) {
    const auto& c = region.constraint(k);
    if (c.relation == Relation::Equal) continue;
    auto slack_of = [&](const std::vector<Rational>& x) { return region.slack(k, x); };
    if (slack_seen(slack_of)) continue;
    LinearProgram lp = region;
    // Cap the slack so the probe stays bounded.
    const auto& cap = c.coeffs;
    if (c.relation == Relation::LessEqual) {
      lp.add_constraint(cap, Relation::GreaterEqual, c.rhs - 1);
    } else {
      lp.add_constraint(cap, Relation::LessEqual, c.rhs + 1);
    }
    lp.set_objective(slack_objective(c), Sense::Maximize);
    const auto r = solve(lp);
    if (r.status != LpStatus::Optimal) throw InternalError("bounded slack probe failed");
    if (sgn(region.slack(k, r.point)) > 0) {
      witnesses.push_back(r.point);
    } else {
      out.rows.push_back(k);
    }
  }
  for (std::size_t j = 0; j < region.num_vars(); ++j) {
    if (!region.lower_bounds()[j]) continue;
    const Rational& l = *region.lower_bounds()[j];
    auto slack_of = [&](const std::vector<Rational>& x) { return Rational(x[j] - l); };
    if (slack_seen(slack_of)) continue;
    LinearProgram lp = region;
    std::vector<Rational> e(region.num_vars(), Rational(0));
    e[j] = 1;
    lp.add_constraint(e, Relation::LessEqual, l + 1);
    lp.set_objective(e, Sense::Maximize);
    const auto r = solve(lp);
    if (r.status != LpStatus::Optimal) throw InternalError("bounded slack probe failed");
    if (r.point[j] > l) {
      witnesses.push_back(r.point);
    } else {
      out.bounds.push_back(j);
    }
  }

  out.interior.assign(region.num_vars(), Rational(0));
  for (const auto& w : witnesses) {
    for (std::size_t j = 0; j < w.size(); ++j) out.interior[j] += w[j];
  }
  const Rational count(static_cast<long>(witnesses.size()));
  for (auto& v : out.interior) v /= count;
  return out;
}

long affine_dimension(const LinearProgram& region) {
  ImplicitEqualities eq;
  try {
    eq = implicit_equalities(region);
  } catch (const AnalysisError&) {
    return -1;
  }
  Matrix rows;
  for (std::size_t k = 0; k < region.num_constraints(); ++k) {
    if (region.constraint(k).relation == Relation::Equal) {
      rows.push_back(region.constraint(k).coeffs);
    }
  }
  for (auto k : eq.rows) rows.push_back(region.constraint(k).coeffs);
  for (auto j : eq.bounds) {
    std::vector<Rational> e(region.num_vars(), Rational(0));
    e[j] = 1;
    rows.push_back(std::move(e));
  }
  return static_cast<long>(region.num_vars()) - static_cast<long>(rank(std::move(rows)));
}

SlackOutcome max_min_slack(const LinearProgram& region,
                           const std::vector<std::size_t>& rows,
                           std::optional<Rational> cap) {
  LinearProgram lp = region;
  const std::size_t t = lp.add_variable("t");
  for (auto k : rows) {
    const auto& c = region.constraint(k);
    if (c.relation == Relation::Equal) {
      throw std::invalid_argument("max_min_slack: row " + std::to_string(k) +
                                  " is an equality");
    }
    auto coeffs = lp.constraint(k).coeffs;
    coeffs[t] = c.relation == Relation::LessEqual ? 1 : -1;
    lp.add_constraint(std::move(coeffs), c.relation, c.rhs);
  }
  if (cap) {
    std::vector<Rational> e(lp.num_vars(), Rational(0));
    e[t] = 1;
    lp.add_constraint(std::move(e), Relation::LessEqual, *cap);
  }
  std::vector<Rational> f(lp.num_vars(), Rational(0));
  f[t] = 1;
  lp.set_objective(std::move(f), Sense::Maximize);
  const auto r = solve(lp);
  SlackOutcome out;
  out.status = r.status;
  if (r.status == LpStatus::Infeasible) throw AnalysisError("region is empty");
  if (r.status == LpStatus::Optimal) {
    out.t = r.point[t];
    out.point.assign(r.point.begin(), r.point.end() - 1);
  }
  return out;
}

}  // namespace dualred
