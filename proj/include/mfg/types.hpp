#ifndef MFG_TYPES_HPP
#define MFG_TYPES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfg {

// Tolerance for membership in a probability simplex.
inline constexpr double kSimplexTol = 1e-12;

enum class ErrorKind {
  invalid_argument,  // bad indices, dimension mismatch, bad option values
  schema,            // malformed model/spec documents
  io,                // file system failures
  cap_exceeded,      // enumeration caps hit
  singular,          // numerically singular linear system
  irreducible,       // irreducibility precondition violated
  not_stationary,    // a point claimed stationary is not
  no_convergence,    // iterative method failed to converge
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Point of the probability simplex over states. Entries are >= 0 and sum
// to 1 within kSimplexTol; the constructor rejects anything else.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(int n);
  static Distribution point_mass(int n, int state);
  // Clips entries in [-clip_tol, 0) to zero and renormalizes. Rejects
  // inputs further from the simplex than clip_tol.
  static Distribution project(std::vector<double> probs, double clip_tol);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Stationary deterministic strategy: one action per state, 0-based.
struct DeterministicStrategy {
  std::vector<int> actions;

  int size() const { return static_cast<int>(actions.size()); }
  int operator[](int i) const { return actions[static_cast<std::size_t>(i)]; }
  bool operator==(const DeterministicStrategy&) const = default;
};

// Stationary mixed strategy: row-stochastic S x A matrix, row i is the
// action distribution used in state i.
class StationaryStrategy {
 public:
  StationaryStrategy(int states, int actions, std::vector<double> weights);

  static StationaryStrategy from_deterministic(const DeterministicStrategy& d,
                                               int actions);
  static StationaryStrategy uniform(int states, int actions);

  int states() const { return states_; }
  int actions() const { return actions_; }
  double weight(int state, int action) const {
    return weights_[static_cast<std::size_t>(state) * actions_ + action];
  }
  const std::vector<double>& weights() const { return weights_; }

  // Actions with weight above the threshold, per state.
  std::vector<int> support(int state, double threshold = 1e-10) const;
  bool is_deterministic(double threshold = 1e-10) const;

 private:
  int states_;
  int actions_;
  std::vector<double> weights_;  // row-major
};

double max_abs(const std::vector<double>& v);

// Max-norm distance between (m, pi) pairs in P(S) x P(A)^S.
double pair_distance(const Distribution& ma, const StationaryStrategy& pa,
                     const Distribution& mb, const StationaryStrategy& pb);

}  // namespace mfg

#endif  // MFG_TYPES_HPP
