#pragma once

#include <optional>
#include <vector>

#include "dualred/rational.hpp"

namespace dualred {

using Matrix = std::vector<std::vector<Rational>>;

/// Rank by exact Gaussian elimination.
std::size_t rank(Matrix rows);

/// Solution of A x = b when it exists and is unique; nullopt otherwise.
std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b);

}  // namespace dualred
