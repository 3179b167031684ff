#ifndef MFG_EQUILIBRIUM_HPP
#define MFG_EQUILIBRIUM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mfg/mdp.hpp"
#include "mfg/model.hpp"
#include "mfg/stationary.hpp"
#include "mfg/types.hpp"

namespace mfg {

enum class EquilibriumKind { deterministic, mixed };

struct Equilibrium {
  Distribution m;
  StationaryStrategy pi;
  EquilibriumKind kind = EquilibriumKind::deterministic;
  std::vector<std::vector<int>> support;  // per-state actions with weight
  double stationary_residual_norm = 0.0;
  // Deterministic: value_gap (positive iff the strategy is uniquely
  // optimal). Mixed: max indifference residual over the support (near 0).
  double optimality_margin = 0.0;
};

struct SearchMetadata {
  int stationary_resolution = 0;
  int mixed_seed_resolution = 0;
  std::size_t strategy_cap = 0;
  int support_budget = 0;
  std::size_t strategies_examined = 0;
  std::size_t supports_examined = 0;
};

struct EquilibriumSet {
  std::vector<Equilibrium> items;
  double dedup_radius = kDedupRadius;
  bool continuum_warning = false;
  std::vector<std::string> warnings;
  SearchMetadata search;
};

struct VerifyReport {
  double stationary_residual_norm = 0.0;
  bool optimal = false;
  // Per state: min over supported actions of b_ia - beta V*_i (about zero
  // for optimal supports, clearly negative for suboptimal ones).
  std::vector<double> per_state_margins;
  double tol = 0.0;
  bool passed = false;
};

struct EquilibriumSearchOptions {
  int stationary_resolution = 0;  // 0: default_stationary_resolution(S)
  int mixed_seed_resolution = 6;  // m-seeding for the mixed support search
  double stationary_tol = kStationaryTol;
  double optimality_tol = kOptTol;
  std::size_t strategy_cap = kStrategyCap;
  int support_budget = 4;  // max sum_i (|support_i| - 1)
  bool include_mixed = true;
};

// Checks both equilibrium conditions at tolerance `tol`: stationarity of m
// under pi, and support containment in the optimal action sets.
VerifyReport verify_equilibrium(const GameModel& model, const Distribution& m,
                                const StationaryStrategy& pi, double tol);

// For every deterministic strategy d: stationary points of Q^d, kept where
// d is optimal at the point. Canonical order: strategy index, then seed.
std::vector<Equilibrium> find_deterministic_equilibria(
    const GameModel& model, const EquilibriumSearchOptions& opts = {},
    std::vector<std::string>* warnings = nullptr,
    bool* continuum_warning = nullptr);

// Support enumeration: for each candidate support, solves the square system
// [stationarity; per-state Bellman indifference] by multi-start Newton over
// (m, weights), keeping solutions whose supports are contained in the
// argmax sets with strictly positive weights. Pass explicit supports, or
// empty to enumerate all supports within the budget.
std::vector<Equilibrium> find_mixed_equilibria(
    const GameModel& model,
    const std::vector<std::vector<std::vector<int>>>& supports,
    const EquilibriumSearchOptions& opts, std::vector<std::string>* warnings,
    bool* continuum_warning);

// Union of the deterministic and mixed searches, deduplicated at
// dedup_radius in max norm on (m, pi). Empty output carries a warning
// (existence is guaranteed, so emptiness signals search failure).
EquilibriumSet find_all_equilibria(const GameModel& model,
                                   const EquilibriumSearchOptions& opts = {});

// Min over the set of max-norm distances from (m, pi). Throws on empty set.
double set_distance(const Distribution& m, const StationaryStrategy& pi,
                    const EquilibriumSet& set);

// Two-sided max-min distance between finite equilibrium sets.
double hausdorff(const EquilibriumSet& a, const EquilibriumSet& b);

}  // namespace mfg

#endif  // MFG_EQUILIBRIUM_HPP
