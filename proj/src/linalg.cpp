#include "dualred/linalg.hpp"

#include <stdexcept>

namespace dualred {
namespace {

// Reduces `m` to row echelon form in place and returns the pivot columns.
// Only the first `cols` columns are eligible as pivots.
std::vector<std::size_t> eliminate(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t k = col; k < m[r].size(); ++k) {
        if (sgn(m[row][k]) != 0) m[r][k] -= f * m[row][k];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  return eliminate(rows, cols).size();
}

std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_unique: shape mismatch");
  if (a.empty()) return std::nullopt;
  const std::size_t cols = a.front().size();
  for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
  const auto pivots = eliminate(a, cols);
  for (std::size_t r = pivots.size(); r < a.size(); ++r) {
    if (sgn(a[r][cols]) != 0) return std::nullopt;  // inconsistent
  }
  if (pivots.size() != cols) return std::nullopt;  // free variables
  std::vector<Rational> x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

}  // namespace dualred
