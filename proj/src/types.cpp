#include "mfg/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mfg {

namespace {

void check_simplex(const std::vector<double>& p, const char* what) {
  if (p.empty()) {
    throw Error(ErrorKind::invalid_argument,
                std::string(what) + ": empty probability vector");
  }
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {  // also rejects NaN
      std::ostringstream os;
      os << what << ": negative entry " << v;
      throw Error(ErrorKind::invalid_argument, os.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    std::ostringstream os;
    os << what << ": entries sum to " << sum << ", not 1";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_simplex(probs_, "Distribution");
}

Distribution Distribution::uniform(int n) {
  std::vector<double> p(static_cast<std::size_t>(n), 1.0 / n);
  // Make the sum exact regardless of n.
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) sum += p[i];
  p.back() = 1.0 - sum;
  return Distribution(std::move(p));
}

Distribution Distribution::point_mass(int n, int state) {
  if (state < 0 || state >= n) {
    throw Error(ErrorKind::invalid_argument, "point_mass: state out of range");
  }
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  p[static_cast<std::size_t>(state)] = 1.0;
  return Distribution(std::move(p));
}

Distribution Distribution::project(std::vector<double> probs, double clip_tol) {
  double sum = 0.0;
  for (double& v : probs) {
    if (v < -clip_tol || !std::isfinite(v)) {
      std::ostringstream os;
      os << "Distribution::project: entry " << v << " below -" << clip_tol;
      throw Error(ErrorKind::invalid_argument, os.str());
    }
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > std::max(clip_tol, kSimplexTol) * probs.size()) {
    std::ostringstream os;
    os << "Distribution::project: sum " << sum << " too far from 1";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  for (double& v : probs) v /= sum;
  // Renormalization can leave the sum one ulp off; absorb it in the
  // largest entry.
  double s2 = 0.0;
  for (double v : probs) s2 += v;
  auto it = std::max_element(probs.begin(), probs.end());
  *it += 1.0 - s2;
  return Distribution(std::move(probs));
}

StationaryStrategy::StationaryStrategy(int states, int actions,
                                       std::vector<double> weights)
    : states_(states), actions_(actions), weights_(std::move(weights)) {
  if (states_ < 1 || actions_ < 1 ||
      weights_.size() != static_cast<std::size_t>(states_) * actions_) {
    throw Error(ErrorKind::invalid_argument,
                "StationaryStrategy: weight matrix shape mismatch");
  }
  for (int i = 0; i < states_; ++i) {
    double sum = 0.0;
    for (int a = 0; a < actions_; ++a) {
      double w = weight(i, a);
      if (!(w >= -kSimplexTol)) {
        throw Error(ErrorKind::invalid_argument,
                    "StationaryStrategy: negative weight");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) {
      std::ostringstream os;
      os << "StationaryStrategy: row " << i << " sums to " << sum;
      throw Error(ErrorKind::invalid_argument, os.str());
    }
  }
}

StationaryStrategy StationaryStrategy::from_deterministic(
    const DeterministicStrategy& d, int actions) {
  const int states = d.size();
  std::vector<double> w(static_cast<std::size_t>(states) * actions, 0.0);
  for (int i = 0; i < states; ++i) {
    if (d[i] < 0 || d[i] >= actions) {
      throw Error(ErrorKind::invalid_argument,
                  "from_deterministic: action index out of range");
    }
    w[static_cast<std::size_t>(i) * actions + d[i]] = 1.0;
  }
  return StationaryStrategy(states, actions, std::move(w));
}

StationaryStrategy StationaryStrategy::uniform(int states, int actions) {
  std::vector<double> w(static_cast<std::size_t>(states) * actions,
                        1.0 / actions);
  StationaryStrategy pi(states, actions, std::move(w));
  return pi;
}

std::vector<int> StationaryStrategy::support(int state, double threshold) const {
  std::vector<int> out;
  for (int a = 0; a < actions_; ++a) {
    if (weight(state, a) > threshold) out.push_back(a);
  }
  return out;
}

bool StationaryStrategy::is_deterministic(double threshold) const {
  for (int i = 0; i < states_; ++i) {
    if (support(i, threshold).size() != 1) return false;
  }
  return true;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double pair_distance(const Distribution& ma, const StationaryStrategy& pa,
                     const Distribution& mb, const StationaryStrategy& pb) {
  if (ma.size() != mb.size() || pa.states() != pb.states() ||
      pa.actions() != pb.actions()) {
    throw Error(ErrorKind::invalid_argument, "pair_distance: shape mismatch");
  }
  double d = 0.0;
  for (int i = 0; i < ma.size(); ++i) d = std::max(d, std::abs(ma[i] - mb[i]));
  for (std::size_t k = 0; k < pa.weights().size(); ++k) {
    d = std::max(d, std::abs(pa.weights()[k] - pb.weights()[k]));
  }
  return d;
}

}  // namespace mfg
