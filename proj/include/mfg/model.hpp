#ifndef MFG_MODEL_HPP
#define MFG_MODEL_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mfg/polynomial.hpp"
#include "mfg/types.hpp"

namespace mfg {

// Finite mean field game instance. Transition rates Q_{ija}(m) and rewards
// r_{ia}(m) are polynomial in the population distribution m. Only
// off-diagonal rate entries are specified; the diagonal is the negated row
// sum, so every Q_{..a}(m) is a conservative generator by construction.
// Immutable after construction; all operations on it are pure.
class GameModel {
 public:
  // off_diagonal_rates: dense S*S*A (index (i*S+j)*A+a), diagonal slots
  // ignored. rewards: dense S*A (index i*A+a).
  GameModel(int states, int actions, double beta,
            std::vector<PolynomialField> off_diagonal_rates,
            std::vector<PolynomialField> rewards);

  int state_count() const { return states_; }
  int action_count() const { return actions_; }
  double discount() const { return beta_; }

  // Diagonal entries are the materialized negated row sums.
  const PolynomialField& rate_poly(int i, int j, int a) const;
  const PolynomialField& reward_poly(int i, int a) const;

  GameModel with_beta(double beta) const;

 private:
  int states_;
  int actions_;
  double beta_;
  std::vector<PolynomialField> rates_;  // S*S*A incl. computed diagonal
  std::vector<PolynomialField> rewards_;
};

double eval_rate(const GameModel& model, int i, int j, int a,
                 const Distribution& m);
double eval_reward(const GameModel& model, int i, int a,
                   const Distribution& m);

// Q^pi(m), a conservative generator (rows sum to 0, off-diagonals >= 0 up
// to floating point noise).
Eigen::MatrixXd effective_generator(const GameModel& model,
                                    const StationaryStrategy& pi,
                                    const Distribution& m);
// Q^d(m) for a deterministic strategy.
Eigen::MatrixXd generator_for(const GameModel& model,
                              const DeterministicStrategy& d,
                              const Distribution& m);
// Reward vector r^d(m) = (r_{i d(i)}(m))_i.
Eigen::VectorXd reward_for(const GameModel& model,
                           const DeterministicStrategy& d,
                           const Distribution& m);

struct RateViolation {
  int i = 0;
  int j = 0;
  int a = 0;
  std::vector<double> m;
  double value = 0.0;
};

struct ValidationReport {
  bool passed = false;
  bool beta_ok = false;
  int grid_resolution = 0;
  std::size_t grid_points = 0;
  // Most negative off-diagonal rate seen on the grid (0 when none).
  double worst_violation = 0.0;
  std::optional<RateViolation> worst_location;
  std::vector<std::string> failures;
};

// Checks off-diagonal nonnegativity of every rate polynomial at every point
// of the uniform simplex grid, and beta in (0,1). Never throws on model
// defects; they are reported.
ValidationReport validate(const GameModel& model, int grid_resolution);

// Grid approximation of the sup-norm game metric:
//   sup |Q - Q'| + sup |r - r'|  over entries and grid m.
// Diagonal rate entries participate. Throws on dimension mismatch.
double game_distance(const GameModel& a, const GameModel& b,
                     int grid_resolution);

// Default simplex grid resolution for sup-norm style scans.
int default_grid_resolution(int states);

}  // namespace mfg

#endif  // MFG_MODEL_HPP
