#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualred/dual.hpp"
#include "dualred/game.hpp"

namespace dualred {

/// Transient states and minimal absorbing classes of the chain on C_i whose
/// transitions are the positive entries of a deviation plan.
struct MarkovDecomposition {
  std::vector<std::size_t> transient;
  std::vector<std::vector<std::size_t>> classes;  ///< sorted, ordered by least member
  std::vector<MixedStrategy> stationary;          ///< one per class, support = class
};

MarkovDecomposition markov_decompose(const DeviationPlan& plan);

enum class StrategyStatus { Eliminated, Kept, Grouped };

const char* to_string(StrategyStatus status);

struct StrategyClass {
  StrategyStatus status = StrategyStatus::Eliminated;
  std::optional<std::size_t> reduced_action;  ///< absent when eliminated
};

struct ReducedGame {
  Game base;
  Game game;  ///< Gamma / alpha
  std::vector<std::vector<MixedStrategy>> reduced_actions;  ///< over base strategies
  std::vector<std::vector<StrategyClass>> classification;
  std::vector<MarkovDecomposition> decompositions;
};

/// Builds Gamma / alpha. Throws AnalysisError unless alpha is a dual vector.
/// Singleton classes keep their label; larger classes are labelled by their
/// members and stationary weights, e.g. `(x1*1/2+y1*1/2)`.
ReducedGame reduce(const Game& game, const DeviationProfile& alpha);

/// mu_bar(c) = sum_sigma mu(sigma) sigma(c).
CorrelatedStrategy lift(const ReducedGame& reduced, const CorrelatedStrategy& mu);
MixedProfile lift(const ReducedGame& reduced, const MixedProfile& sigma);

enum class PolicyKind { Full, StrongFull };

const char* to_string(PolicyKind kind);

struct ReductionPolicy {
  PolicyKind kind = PolicyKind::Full;
  /// Passed to the full dual vector construction at every stage.
  std::optional<std::uint64_t> seed;
};

struct ReductionStage {
  Game game;
  DeviationProfile alpha;
  ReducedGame reduced;
};

struct ReductionTrace {
  std::vector<ReductionStage> stages;
  Game terminal;
  bool terminal_elementary = false;

  CorrelatedStrategy lift_to_base(const CorrelatedStrategy& mu) const;
  MixedProfile lift_to_base(const MixedProfile& sigma) const;
};

/// Applies the policy's dual vector until the game is elementary. Throws
/// InternalError if a non-elementary stage fails to shrink.
ReductionTrace iterate_to_elementary(const Game& game, const ReductionPolicy& policy = {});

/// Stages with grouped strategies whose reduced strategies change when the
/// policy's dual vector is rebuilt with another seed. Each hit shows that full
/// reductions of that stage's game are not unique; an empty result is not a
/// proof of uniqueness.
std::vector<std::size_t> nonunique_stages(const ReductionTrace& trace,
                                          const ReductionPolicy& policy);

/// Checks that the stationary strategies on a block of minimal absorbing
/// classes form a completely mixed Nash equilibrium of the restricted game.
/// Throws AnalysisError when some B_i is not a minimal absorbing class.
bool block_equilibrium_check(const Game& game, const DeviationProfile& alpha,
                             const Block& block);

enum class StageCategory { Elementary, Singleton, EliminationOnly, Other };

const char* to_string(StageCategory category);

/// Singleton takes precedence over EliminationOnly when a reduction both
/// eliminates without grouping and ends at a single profile.
StageCategory categorize(const ReducedGame& reduced);

}  // namespace dualred
