#include "dualred/game.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace dualred {

Game::Game(std::string name, std::vector<std::vector<std::string>> labels,
           std::vector<Rational> payoffs)
    : name_(std::move(name)), labels_(std::move(labels)), payoffs_(std::move(payoffs)) {
  if (labels_.empty()) throw std::invalid_argument("game needs at least one player");
  const std::size_t n = labels_.size();
  counts_.resize(n);
  strides_.resize(n);
  num_profiles_ = 1;
  for (std::size_t i = n; i-- > 0;) {
    if (labels_[i].empty()) {
      throw std::invalid_argument("player " + std::to_string(i + 1) +
                                  " has no strategies");
    }
    std::unordered_set<std::string> seen(labels_[i].begin(), labels_[i].end());
    if (seen.size() != labels_[i].size()) {
      throw std::invalid_argument("duplicate strategy label for player " +
                                  std::to_string(i + 1));
    }
    counts_[i] = labels_[i].size();
    strides_[i] = num_profiles_;
    num_profiles_ *= counts_[i];
  }
  if (payoffs_.size() != num_profiles_ * n) {
    throw std::invalid_argument("payoff table has " + std::to_string(payoffs_.size()) +
                                " entries, expected " +
                                std::to_string(num_profiles_ * n));
  }
}

Game Game::with_default_labels(std::string name,
                               const std::vector<std::size_t>& action_counts,
                               std::vector<Rational> payoffs) {
  std::vector<std::vector<std::string>> labels;
  for (std::size_t m : action_counts) {
    std::vector<std::string> row;
    for (std::size_t k = 0; k < m; ++k) row.push_back("s" + std::to_string(k + 1));
    labels.push_back(std::move(row));
  }
  return Game(std::move(name), std::move(labels), std::move(payoffs));
}

std::size_t Game::total_actions() const {
  std::size_t total = 0;
  for (auto m : counts_) total += m;
  return total;
}

std::size_t Game::index_of(const Profile& profile) const {
  if (profile.size() != num_players()) {
    throw std::invalid_argument("profile has wrong number of players");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] >= counts_[i]) throw std::out_of_range("strategy index out of range");
    index += profile[i] * strides_[i];
  }
  return index;
}

Profile Game::profile_at(std::size_t index) const {
  Profile c(num_players());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = action_in(index, i);
  return c;
}

std::size_t Game::opponent_index(std::size_t profile, std::size_t player) const {
  std::size_t index = 0;
  for (std::size_t j = 0; j < num_players(); ++j) {
    if (j == player) continue;
    index = index * counts_[j] + action_in(profile, j);
  }
  return index;
}

Block Block::full(const Game& game) {
  Block b;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    std::vector<std::size_t> all(game.num_actions(i));
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    b.sets.push_back(std::move(all));
  }
  return b;
}

bool Block::contains(const Profile& profile) const {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!std::binary_search(sets[i].begin(), sets[i].end(), profile[i])) return false;
  }
  return true;
}

std::size_t Block::size() const {
  std::size_t n = 1;
  for (const auto& s : sets) n *= s.size();
  return n;
}

Rescaling Rescaling::identity(const Game& game) {
  Rescaling r;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    r.scale.emplace_back(1);
    r.offset.emplace_back(game.num_opponent_profiles(i), Rational(0));
  }
  return r;
}

PlayerPermutation PlayerPermutation::identity(std::size_t players) {
  PlayerPermutation p;
  for (std::size_t i = 0; i < players; ++i) p.mapping.push_back(i);
  return p;
}

PlayerPermutation PlayerPermutation::cycle(std::size_t players) {
  PlayerPermutation p;
  for (std::size_t i = 0; i < players; ++i) p.mapping.push_back((i + 1) % players);
  return p;
}

PlayerPermutation PlayerPermutation::swap(std::size_t players, std::size_t a,
                                          std::size_t b) {
  auto p = identity(players);
  std::swap(p.mapping.at(a), p.mapping.at(b));
  return p;
}

bool PlayerPermutation::is_bijection() const {
  std::vector<bool> hit(mapping.size(), false);
  for (auto target : mapping) {
    if (target >= mapping.size() || hit[target]) return false;
    hit[target] = true;
  }
  return true;
}

PlayerPermutation PlayerPermutation::compose(const PlayerPermutation& inner) const {
  PlayerPermutation out;
  out.mapping.resize(mapping.size());
  for (std::size_t i = 0; i < mapping.size(); ++i) out.mapping[i] = mapping[inner.mapping[i]];
  return out;
}

Profile PlayerPermutation::apply(const Profile& profile) const {
  Profile out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) out[mapping[i]] = profile[i];
  return out;
}

void require_mixed_profile(const Game& game, const MixedProfile& sigma) {
  if (sigma.size() != game.num_players()) {
    throw std::invalid_argument("mixed profile has " + std::to_string(sigma.size()) +
                                " players, game has " +
                                std::to_string(game.num_players()));
  }
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    require_distribution(sigma[i], game.num_actions(i),
                         "mixed strategy of player " + std::to_string(i + 1));
  }
}

void require_correlated(const Game& game, const CorrelatedStrategy& mu) {
  require_distribution(mu, game.num_profiles(), "correlated strategy");
}

namespace {

// Weight of each profile under sigma, skipping players listed in `skip`.
std::vector<Rational> profile_weights(const Game& game, const MixedProfile& sigma,
                                      std::size_t skip) {
  std::vector<Rational> w(game.num_profiles());
  for (std::size_t c = 0; c < w.size(); ++c) {
    Rational p = 1;
    for (std::size_t j = 0; j < game.num_players() && sgn(p) != 0; ++j) {
      if (j == skip) continue;
      p *= sigma[j][game.action_in(c, j)];
    }
    w[c] = p;
  }
  return w;
}

}  // namespace

Rational expected_utility(const Game& game, const MixedProfile& sigma,
                          std::size_t player) {
  require_mixed_profile(game, sigma);
  if (player >= game.num_players()) throw std::out_of_range("player out of range");
  const auto w = profile_weights(game, sigma, game.num_players());
  Rational total = 0;
  for (std::size_t c = 0; c < w.size(); ++c) {
    if (sgn(w[c]) != 0) total += w[c] * game.payoff(c, player);
  }
  return total;
}

Rational correlated_expected_utility(const Game& game, const CorrelatedStrategy& mu,
                                     std::size_t player) {
  require_correlated(game, mu);
  if (player >= game.num_players()) throw std::out_of_range("player out of range");
  Rational total = 0;
  for (std::size_t c = 0; c < mu.size(); ++c) {
    if (sgn(mu[c]) != 0) total += mu[c] * game.payoff(c, player);
  }
  return total;
}

Rational payoff_against(const Game& game, const MixedProfile& sigma,
                        std::size_t player, std::size_t action) {
  Rational total = 0;
  // Iterate over profiles whose player-coordinate equals `action`.
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    if (game.action_in(c, player) != action) continue;
    Rational p = 1;
    for (std::size_t j = 0; j < game.num_players() && sgn(p) != 0; ++j) {
      if (j != player) p *= sigma[j][game.action_in(c, j)];
    }
    if (sgn(p) != 0) total += p * game.payoff(c, player);
  }
  return total;
}

CorrelatedStrategy product_distribution(const Game& game, const MixedProfile& sigma) {
  require_mixed_profile(game, sigma);
  return profile_weights(game, sigma, game.num_players());
}

Game restrict(const Game& game, const Block& block) {
  if (block.sets.size() != game.num_players()) {
    throw std::invalid_argument("block has wrong number of players");
  }
  std::vector<std::vector<std::string>> labels;
  for (std::size_t i = 0; i < block.sets.size(); ++i) {
    const auto& s = block.sets[i];
    if (s.empty()) {
      throw std::invalid_argument("block is empty for player " + std::to_string(i + 1));
    }
    if (!std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end() ||
        s.back() >= game.num_actions(i)) {
      throw std::invalid_argument("block for player " + std::to_string(i + 1) +
                                  " must be a sorted subset of its strategies");
    }
    std::vector<std::string> row;
    for (auto k : s) row.push_back(game.label(i, k));
    labels.push_back(std::move(row));
  }
  std::vector<Rational> payoffs;
  const std::size_t n = game.num_players();
  std::size_t count = block.size();
  payoffs.reserve(count * n);
  Profile sub(n, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Profile c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = block.sets[i][sub[i]];
    const auto base = game.index_of(c);
    for (std::size_t i = 0; i < n; ++i) payoffs.push_back(game.payoff(base, i));
    for (std::size_t i = n; i-- > 0;) {
      if (++sub[i] < block.sets[i].size()) break;
      sub[i] = 0;
    }
  }
  return Game(game.name(), std::move(labels), std::move(payoffs));
}

Game rescale(const Game& game, const Rescaling& r) {
  const std::size_t n = game.num_players();
  if (r.scale.size() != n || r.offset.size() != n) {
    throw std::invalid_argument("rescaling has wrong number of players");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(r.scale[i]) <= 0) {
      throw std::invalid_argument("rescaling factor of player " + std::to_string(i + 1) +
                                  " must be positive");
    }
    if (r.offset[i].size() != game.num_opponent_profiles(i)) {
      throw std::invalid_argument("rescaling offset of player " + std::to_string(i + 1) +
                                  " has wrong length");
    }
  }
  std::vector<Rational> payoffs(game.payoff_table().size());
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      payoffs[c * n + i] =
          r.scale[i] * game.payoff(c, i) + r.offset[i][game.opponent_index(c, i)];
    }
  }
  return Game(game.name(), game.labels(), std::move(payoffs));
}

namespace {

void require_compatible(const Game& game, const PlayerPermutation& p) {
  if (p.mapping.size() != game.num_players() || !p.is_bijection()) {
    throw std::invalid_argument("permutation is not a bijection on the players");
  }
  for (std::size_t i = 0; i < p.mapping.size(); ++i) {
    if (game.num_actions(i) != game.num_actions(p.mapping[i])) {
      throw std::invalid_argument("players " + std::to_string(i + 1) + " and " +
                                  std::to_string(p.mapping[i] + 1) +
                                  " have different strategy sets");
    }
  }
}

}  // namespace

bool is_p_symmetric(const Game& game, const PlayerPermutation& p) {
  require_compatible(game, p);
  for (std::size_t c = 0; c < game.num_profiles(); ++c) {
    const auto image = game.index_of(p.apply(game.profile_at(c)));
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      if (game.payoff(image, p.mapping[i]) != game.payoff(c, i)) return false;
    }
  }
  return true;
}

std::set<PlayerPermutation> permutation_closure(
    const std::vector<PlayerPermutation>& perms, std::size_t players) {
  for (const auto& p : perms) {
    if (p.mapping.size() != players || !p.is_bijection()) {
      throw std::invalid_argument("permutation is not a bijection on the players");
    }
  }
  std::set<PlayerPermutation> closed{PlayerPermutation::identity(players)};
  std::deque<PlayerPermutation> frontier(closed.begin(), closed.end());
  while (!frontier.empty()) {
    const auto current = frontier.front();
    frontier.pop_front();
    for (const auto& g : perms) {
      auto next = g.compose(current);
      if (closed.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return closed;
}

}  // namespace dualred
