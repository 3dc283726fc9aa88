#include "dualred/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dualred {
namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"}
                                                   : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) ||
      den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

bool is_distribution(std::span<const Rational> weights) {
  Rational total = 0;
  for (const auto& w : weights) {
    if (sgn(w) < 0) return false;
    total += w;
  }
  return total == 1;
}

void require_distribution(std::span<const Rational> weights, std::size_t size,
                          std::string_view what) {
  if (weights.size() != size) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(size) + " weights, got " +
                                std::to_string(weights.size()));
  }
  if (!is_distribution(weights)) {
    throw std::invalid_argument(std::string(what) +
                                ": weights must be nonnegative and sum to 1");
  }
}

Distribution point_mass(std::size_t size, std::size_t index) {
  Distribution d(size, Rational(0));
  d.at(index) = 1;
  return d;
}

Distribution uniform(std::size_t size) {
  return Distribution(size, Rational(1, static_cast<unsigned long>(size)));
}

}  // namespace dualred
