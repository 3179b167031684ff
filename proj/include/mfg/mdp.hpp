#ifndef MFG_MDP_HPP
#define MFG_MDP_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mfg/model.hpp"
#include "mfg/types.hpp"

namespace mfg {

// Discounted value per starting state.
using ValueVector = Eigen::VectorXd;

inline constexpr double kOptTol = 1e-7;       // relative argmax band
inline constexpr int kStrategyCap = 4096;     // |D^s| enumeration cap

// Optimal value V* together with the per-state optimal action sets A_i*.
// The optimal deterministic strategies are exactly the product of the
// per-state sets; optimal stationary strategies are their mixtures.
struct OptimalStrategySet {
  std::vector<std::vector<int>> per_state_actions;  // each nonempty, sorted
  ValueVector value;

  std::size_t product_size() const {
    std::size_t n = 1;
    for (const auto& s : per_state_actions) n *= s.size();
    return n;
  }
};

struct MonteCarloEstimate {
  ValueVector values;       // per starting state
  ValueVector std_errors;   // per starting state
  double aggregate = 0.0;   // x0-weighted estimate
  double aggregate_se = 0.0;
  double truncation_bias_bound = 0.0;
  double horizon = 0.0;
  int paths = 0;
  std::uint64_t seed = 0;
};

// Unique solution of (beta I - Q^d(m)) V = r^d(m). The residual is checked
// against 1e-10 * (1 + |r|_inf); failures raise Error(singular).
ValueVector value_of_deterministic(const GameModel& model,
                                   const DeterministicStrategy& d,
                                   const Distribution& m);

// Howard policy iteration on the continuous-time Bellman system, with
// exhaustive enumeration fallback when A^S <= kStrategyCap. A_i* contains
// every action whose Bellman value is within tol*(1+|beta V*_i|) of beta V*_i.
OptimalStrategySet optimal_value(const GameModel& model, const Distribution& m,
                                 double tol = kOptTol);

// Materializes the product set Prod_i A_i*; every member is re-verified to
// attain V* within a scaled slack. Throws Error(cap_exceeded) above cap.
std::vector<DeterministicStrategy> optimal_deterministic_set(
    const GameModel& model, const Distribution& m, double tol = kOptTol,
    std::size_t cap = kStrategyCap);

// True iff support(pi_i) is contained in A_i*(m) for every state.
bool is_strategy_optimal(const GameModel& model, const StationaryStrategy& pi,
                         const Distribution& m, double tol = kOptTol);

// gamma(m) = min over dhat != d of the pointwise minimum of
// V^d(m) - V^dhat(m); positive only if d is the unique optimal strategy.
// Enumerates all A^S strategies, so the cap applies.
double value_gap(const GameModel& model, const Distribution& m,
                 const DeterministicStrategy& d,
                 std::size_t cap = kStrategyCap);

// Horizon at which the discounted tail falls below `target` for this
// model's reward scale under pi at m.
double default_horizon(const GameModel& model, const StationaryStrategy& pi,
                       const Distribution& m, double target = 1e-6);

// Simulates the jump process with generator Q^pi(m) and integrates the
// discounted expected reward rate along each path up to `horizon`.
// Deterministic given (seed, paths) for any thread count. x0 weights the
// per-state estimates into the aggregate.
MonteCarloEstimate monte_carlo_value(const GameModel& model,
                                     const StationaryStrategy& pi,
                                     const Distribution& m,
                                     const Distribution& x0, double horizon,
                                     int paths, std::uint64_t seed);

// All A^S deterministic strategies in lexicographic order (throws above cap).
std::vector<DeterministicStrategy> enumerate_strategies(
    int states, int actions, std::size_t cap = kStrategyCap);

}  // namespace mfg

#endif  // MFG_MDP_HPP
