#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualred {

/// Exact rational number. GMP keeps every result in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

/// A probability vector over a finite index set.
using Distribution = std::vector<Rational>;

/// Parses `p/q` or an integer literal in base 10. Throws std::invalid_argument
/// on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: `p` when the denominator is 1, else `p/q`.
std::string to_string(const Rational& value);

Rational sum(std::span<const Rational> values);

/// True when all entries are nonnegative and they sum to exactly one.
bool is_distribution(std::span<const Rational> weights);

/// Throws std::invalid_argument naming `what` unless `weights` is a
/// distribution of the given size.
void require_distribution(std::span<const Rational> weights, std::size_t size,
                          std::string_view what);

/// Point mass at `index` in a vector of `size` entries.
Distribution point_mass(std::size_t size, std::size_t index);

Distribution uniform(std::size_t size);

}  // namespace dualred
