#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "dualred/rational.hpp"

namespace dualred {

/// Pure strategy profile: one strategy index per player.
using Profile = std::vector<std::size_t>;

using MixedStrategy = Distribution;
using MixedProfile = std::vector<MixedStrategy>;

/// Distribution over pure strategy profiles, indexed like Game profiles.
using CorrelatedStrategy = Distribution;

/// Finite game in strategic form with exact payoffs.
///
/// Profiles are enumerated lexicographically with the last player's strategy
/// index varying fastest; every profile-indexed vector in the library uses
/// this order. Players and strategies are referred to by index; labels are
/// carried for I/O only.
class Game {
 public:
  /// `payoffs` holds num_profiles() rows of num_players() entries each.
  Game(std::string name, std::vector<std::vector<std::string>> labels,
       std::vector<Rational> payoffs);

  /// Game with default labels `s1`, `s2`, ... for every player.
  static Game with_default_labels(std::string name,
                                  const std::vector<std::size_t>& action_counts,
                                  std::vector<Rational> payoffs);

  const std::string& name() const { return name_; }
  std::size_t num_players() const { return labels_.size(); }
  std::size_t num_actions(std::size_t player) const { return labels_.at(player).size(); }
  const std::vector<std::size_t>& action_counts() const { return counts_; }
  std::size_t num_profiles() const { return num_profiles_; }
  std::size_t total_actions() const;

  const std::vector<std::vector<std::string>>& labels() const { return labels_; }
  const std::string& label(std::size_t player, std::size_t action) const {
    return labels_.at(player).at(action);
  }

  const Rational& payoff(std::size_t profile, std::size_t player) const {
    return payoffs_[profile * num_players() + player];
  }
  const Rational& payoff(const Profile& profile, std::size_t player) const {
    return payoff(index_of(profile), player);
  }
  const std::vector<Rational>& payoff_table() const { return payoffs_; }

  std::size_t index_of(const Profile& profile) const;
  Profile profile_at(std::size_t index) const;
  std::size_t action_in(std::size_t profile, std::size_t player) const {
    return (profile / strides_[player]) % counts_[player];
  }
  /// Index of the profile (c_{-i}, d_i).
  std::size_t with_action(std::size_t profile, std::size_t player,
                          std::size_t action) const {
    return profile + (action - action_in(profile, player)) * strides_[player];
  }
  std::size_t stride(std::size_t player) const { return strides_[player]; }

  /// Index of c_{-i} among the opponent profiles of `player`, enumerated in
  /// the same last-fastest order with player i removed.
  std::size_t opponent_index(std::size_t profile, std::size_t player) const;
  std::size_t num_opponent_profiles(std::size_t player) const {
    return num_profiles_ / counts_[player];
  }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  std::string name_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
  std::vector<Rational> payoffs_;
};

/// Per-player nonempty strategy subsets.
struct Block {
  std::vector<std::vector<std::size_t>> sets;

  static Block full(const Game& game);
  bool contains(const Profile& profile) const;
  std::size_t size() const;
  friend bool operator==(const Block&, const Block&) = default;
};

/// U'_i(c) = scale_i * U_i(c) + offset_i(c_{-i}); offsets are indexed by
/// Game::opponent_index.
struct Rescaling {
  std::vector<Rational> scale;
  std::vector<std::vector<Rational>> offset;

  static Rescaling identity(const Game& game);
};

/// Bijection on player indices. It acts on profiles by c^p_{p(i)} = c_i.
struct PlayerPermutation {
  std::vector<std::size_t> mapping;

  static PlayerPermutation identity(std::size_t players);
  static PlayerPermutation cycle(std::size_t players);
  static PlayerPermutation swap(std::size_t players, std::size_t a, std::size_t b);

  bool is_bijection() const;
  PlayerPermutation compose(const PlayerPermutation& inner) const;  // this ∘ inner
  Profile apply(const Profile& profile) const;

  friend auto operator<=>(const PlayerPermutation&, const PlayerPermutation&) = default;
};

/// Multilinear extension: sum_c prod_j sigma_j(c_j) U_i(c).
Rational expected_utility(const Game& game, const MixedProfile& sigma,
                          std::size_t player);

/// Sum_c mu(c) U_i(c).
Rational correlated_expected_utility(const Game& game, const CorrelatedStrategy& mu,
                                     std::size_t player);

/// U_i(sigma_{-i}, c_i); the entry sigma[player] is ignored.
Rational payoff_against(const Game& game, const MixedProfile& sigma,
                        std::size_t player, std::size_t action);

/// Product distribution over profiles induced by a mixed profile.
CorrelatedStrategy product_distribution(const Game& game, const MixedProfile& sigma);

void require_mixed_profile(const Game& game, const MixedProfile& sigma);
void require_correlated(const Game& game, const CorrelatedStrategy& mu);

Game restrict(const Game& game, const Block& block);
Game rescale(const Game& game, const Rescaling& rescaling);

/// Strategy sets of i and p(i) are identified by index, so p is compatible
/// with a game when those players have equally many strategies.
bool is_p_symmetric(const Game& game, const PlayerPermutation& p);

/// Smallest composition-closed set containing the identity and `perms`.
std::set<PlayerPermutation> permutation_closure(
    const std::vector<PlayerPermutation>& perms, std::size_t players);

}  // namespace dualred
