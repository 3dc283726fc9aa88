#include "dualred/game_io.hpp"

#include <cctype>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dualred/errors.hpp"

namespace dualred {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

// Splits text into non-empty lines of whitespace-separated tokens, dropping
// everything after '#'.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t k = 0;
    while (k < raw.size()) {
      while (k < raw.size() && std::isspace(static_cast<unsigned char>(raw[k]))) ++k;
      const std::size_t b = k;
      while (k < raw.size() && !std::isspace(static_cast<unsigned char>(raw[k]))) ++k;
      if (k > b) line.tokens.push_back({raw.substr(b, k - b), b + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::size_t parse_count(const Line& line, const Token& t, const char* what) {
  std::size_t value = 0;
  for (char ch : t.text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError(line.number, t.column,
                       std::string("expected a positive integer for ") + what + ", found '" +
                           std::string(t.text) + "'");
    }
    value = value * 10 + static_cast<std::size_t>(ch - '0');
    if (value > 1'000'000) throw ParseError(line.number, t.column, "count too large");
  }
  if (value == 0) {
    throw ParseError(line.number, t.column, std::string(what) + " must be positive");
  }
  return value;
}

Rational parse_entry(std::size_t line, const Token& t) {
  try {
    return parse_rational(t.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, t.column, e.what());
  }
}

std::vector<Rational> parse_numbers(std::string_view text, const char* what) {
  std::vector<Rational> out;
  for (const auto& line : tokenize(text)) {
    for (const auto& t : line.tokens) out.push_back(parse_entry(line.number, t));
  }
  if (out.empty()) throw ParseError(1, 1, std::string("empty ") + what);
  return out;
}

}  // namespace

Game parse_game(std::string_view text) {
  const auto lines = tokenize(text);
  std::optional<std::string> name;
  std::optional<std::size_t> players;
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::string>> labels;
  std::size_t labels_line = 0;
  std::size_t k = 0;
  for (; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto& key = line.tokens.front();
    if (key.text == "game") {
      if (name) throw ParseError(line.number, key.column, "duplicate 'game' line");
      std::string n;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        if (t > 1) n += ' ';
        n += line.tokens[t].text;
      }
      name = std::move(n);
    } else if (key.text == "players") {
      if (players) throw ParseError(line.number, key.column, "duplicate 'players' line");
      if (line.tokens.size() != 2) {
        throw ParseError(line.number, key.column, "'players' takes exactly one count");
      }
      players = parse_count(line, line.tokens[1], "players");
    } else if (key.text == "actions") {
      if (!players) throw ParseError(line.number, key.column, "'actions' before 'players'");
      if (!counts.empty()) throw ParseError(line.number, key.column, "duplicate 'actions' line");
      if (line.tokens.size() != *players + 1) {
        throw ParseError(line.number, key.column,
                         "expected " + std::to_string(*players) + " action counts, found " +
                             std::to_string(line.tokens.size() - 1));
      }
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        counts.push_back(parse_count(line, line.tokens[t], "action count"));
      }
    } else if (key.text == "labels") {
      if (counts.empty()) throw ParseError(line.number, key.column, "'labels' before 'actions'");
      const std::size_t player = labels.size();
      if (player >= counts.size()) {
        throw ParseError(line.number, key.column, "more 'labels' lines than players");
      }
      if (line.tokens.size() != counts[player] + 1) {
        throw ParseError(line.number, key.column,
                         "player " + std::to_string(player + 1) + " needs " +
                             std::to_string(counts[player]) + " labels, found " +
                             std::to_string(line.tokens.size() - 1));
      }
      std::vector<std::string> ls;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        const auto& tok = line.tokens[t];
        if (tok.text.find(';') != std::string_view::npos) {
          throw ParseError(line.number, tok.column, "labels may not contain ';'");
        }
        for (const auto& prev : ls) {
          if (prev == tok.text) {
            throw ParseError(line.number, tok.column,
                             "duplicate label '" + std::string(tok.text) + "'");
          }
        }
        ls.emplace_back(tok.text);
      }
      labels.push_back(std::move(ls));
      labels_line = line.number;
    } else if (key.text == "payoffs") {
      if (line.tokens.size() != 1) {
        throw ParseError(line.number, line.tokens[1].column, "unexpected text after 'payoffs'");
      }
      break;
    } else {
      throw ParseError(line.number, key.column,
                       "unknown header keyword '" + std::string(key.text) + "'");
    }
  }
  const std::size_t header_end = k < lines.size() ? lines[k].number : 1;
  if (k == lines.size()) {
    const std::size_t last = lines.empty() ? 1 : lines.back().number;
    throw ParseError(last, 1, "missing 'payoffs' section");
  }
  if (!name) throw ParseError(header_end, 1, "missing 'game' line");
  if (!players) throw ParseError(header_end, 1, "missing 'players' line");
  if (counts.empty()) throw ParseError(header_end, 1, "missing 'actions' line");
  if (!labels.empty() && labels.size() != counts.size()) {
    throw ParseError(labels_line, 1,
                     "labels given for " + std::to_string(labels.size()) + " of " +
                         std::to_string(counts.size()) + " players");
  }
  if (labels.empty()) {
    for (auto m : counts) {
      std::vector<std::string> ls;
      for (std::size_t a = 0; a < m; ++a) ls.push_back("s" + std::to_string(a + 1));
      labels.push_back(std::move(ls));
    }
  }
  std::size_t rows = 1;
  for (auto m : counts) {
    rows *= m;
    if (rows > 10'000'000) throw ParseError(header_end, 1, "payoff table too large");
  }
  const std::size_t n = *players;
  std::vector<Rational> payoffs;
  payoffs.reserve(rows * n);
  const std::size_t found = lines.size() - k - 1;
  if (found != rows) {
    const auto& at = found > rows ? lines[k + 1 + rows] : lines.back();
    throw ParseError(at.number, 1,
                     "expected " + std::to_string(rows) + " payoff rows, found " +
                         std::to_string(found));
  }
  for (std::size_t r = k + 1; r < lines.size(); ++r) {
    const auto& line = lines[r];
    if (line.tokens.size() != n) {
      throw ParseError(line.number, line.tokens.front().column,
                       "expected " + std::to_string(n) + " payoffs in row, found " +
                           std::to_string(line.tokens.size()));
    }
    for (const auto& t : line.tokens) payoffs.push_back(parse_entry(line.number, t));
  }
  return Game(std::move(*name), std::move(labels), std::move(payoffs));
}

std::string write_game(const Game& game) {
  std::ostringstream out;
  out << "game";
  if (!game.name().empty()) out << ' ' << game.name();
  out << "\nplayers " << game.num_players() << "\nactions";
  for (auto m : game.action_counts()) out << ' ' << m;
  out << '\n';
  for (const auto& ls : game.labels()) {
    out << "labels";
    for (const auto& l : ls) out << ' ' << l;
    out << '\n';
  }
  out << "payoffs\n";
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      if (i) out << ' ';
      out << to_string(game.payoff(c, i));
    }
    out << '\n';
  }
  return out.str();
}

MixedProfile parse_mixed_profile(std::string_view text, const Game& game) {
  MixedProfile sigma;
  for (const auto& line : tokenize(text)) {
    MixedStrategy s;
    for (const auto& t : line.tokens) s.push_back(parse_entry(line.number, t));
    sigma.push_back(std::move(s));
  }
  require_mixed_profile(game, sigma);
  return sigma;
}

CorrelatedStrategy parse_correlated(std::string_view text, const Game& game) {
  auto mu = parse_numbers(text, "correlated strategy");
  require_correlated(game, mu);
  return mu;
}

namespace {

class PayoffSource {
 public:
  PayoffSource(std::uint64_t seed, long lo, long hi) : rng_(seed), lo_(lo) {
    if (lo > hi) throw std::invalid_argument("empty payoff range");
    span_ = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  }

  Rational next() {
    const std::uint64_t draw = rng_();
    const std::uint64_t offset = span_ == 0 ? draw : draw % span_;
    return Rational(mpz_class(lo_) + mpz_class(std::to_string(offset)));
  }

 private:
  std::mt19937_64 rng_;
  long lo_;
  std::uint64_t span_;
};

std::string seeded_name(const char* kind, std::uint64_t seed) {
  return std::string(kind) + "-" + std::to_string(seed);
}

}  // namespace

Game gen_game(std::uint64_t seed, const std::vector<std::size_t>& action_counts, long lo,
              long hi) {
  if (action_counts.empty()) throw std::invalid_argument("a game needs at least one player");
  PayoffSource src(seed, lo, hi);
  std::size_t profiles = 1;
  for (auto m : action_counts) {
    if (m == 0) throw std::invalid_argument("action counts must be positive");
    profiles *= m;
  }
  std::vector<Rational> payoffs(profiles * action_counts.size());
  for (auto& p : payoffs) p = src.next();
  return Game::with_default_labels(seeded_name("gen", seed), action_counts, std::move(payoffs));
}

Game gen_zero_sum(std::uint64_t seed, std::size_t m1, std::size_t m2, long lo, long hi) {
  if (m1 == 0 || m2 == 0) throw std::invalid_argument("action counts must be positive");
  PayoffSource src(seed, lo, hi);
  std::vector<Rational> payoffs;
  for (std::size_t c = 0; c < m1 * m2; ++c) {
    Rational u = src.next();
    payoffs.push_back(u);
    payoffs.push_back(-u);
  }
  return Game::with_default_labels(seeded_name("zerosum", seed), {m1, m2}, std::move(payoffs));
}

Game gen_cyclic_symmetric(std::uint64_t seed, std::size_t players, std::size_t m, long lo,
                          long hi) {
  if (players == 0 || m == 0) throw std::invalid_argument("counts must be positive");
  PayoffSource src(seed, lo, hi);
  const std::vector<std::size_t> counts(players, m);
  std::size_t profiles = 1;
  for (std::size_t i = 0; i < players; ++i) profiles *= m;
  std::vector<Rational> first(profiles);
  for (auto& u : first) u = src.next();
  const Game shape = Game::with_default_labels("", counts, std::vector<Rational>(profiles * players));
  std::vector<Rational> payoffs(profiles * players);
  for (std::size_t c = 0; c < profiles; ++c) {
    const auto prof = shape.profile_at(c);
    for (std::size_t k = 0; k < players; ++k) {
      Profile rotated(players);
      for (std::size_t j = 0; j < players; ++j) rotated[j] = prof[(j + k) % players];
      payoffs[c * players + k] = first[shape.index_of(rotated)];
    }
  }
  return Game::with_default_labels(seeded_name("symmetric", seed), counts, std::move(payoffs));
}

}  // namespace dualred
