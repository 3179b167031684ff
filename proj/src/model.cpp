#include "mfg/model.hpp"

#include <cmath>
#include <sstream>

#include "mfg/simplex.hpp"

namespace mfg {

namespace {

std::size_t rate_index(int S, int A, int i, int j, int a) {
  return (static_cast<std::size_t>(i) * S + j) * A + a;
}

std::size_t reward_index(int A, int i, int a) {
  return static_cast<std::size_t>(i) * A + a;
}

void check_indices(const GameModel& model, int i, int j, int a) {
  if (i < 0 || i >= model.state_count() || j < 0 || j >= model.state_count() ||
      a < 0 || a >= model.action_count()) {
    std::ostringstream os;
    os << "rate index out of range: (" << i << ", " << j << ", " << a << ")";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
}

}  // namespace

GameModel::GameModel(int states, int actions, double beta,
                     std::vector<PolynomialField> off_diagonal_rates,
                     std::vector<PolynomialField> rewards)
    : states_(states),
      actions_(actions),
      beta_(beta),
      rates_(std::move(off_diagonal_rates)),
      rewards_(std::move(rewards)) {
  if (states_ < 2) {
    throw Error(ErrorKind::invalid_argument, "GameModel: need at least 2 states");
  }
  if (actions_ < 1) {
    throw Error(ErrorKind::invalid_argument, "GameModel: need at least 1 action");
  }
  const std::size_t n_rates =
      static_cast<std::size_t>(states_) * states_ * actions_;
  const std::size_t n_rewards = static_cast<std::size_t>(states_) * actions_;
  if (rates_.size() != n_rates || rewards_.size() != n_rewards) {
    throw Error(ErrorKind::invalid_argument, "GameModel: table size mismatch");
  }
  auto normalize = [this](PolynomialField& p, const char* what) {
    if (p.dim() == 0) {
      p = PolynomialField::zero(states_);
    } else if (p.dim() != states_) {
      throw Error(ErrorKind::invalid_argument,
                  std::string(what) + ": polynomial dim != state count");
    }
  };
  for (PolynomialField& p : rates_) normalize(p, "rate");
  for (PolynomialField& p : rewards_) normalize(p, "reward");

  // Row-sum closure: the diagonal is the negated sum of the row's
  // off-diagonal polynomials.
  for (int a = 0; a < actions_; ++a) {
    for (int i = 0; i < states_; ++i) {
      PolynomialField diag = PolynomialField::zero(states_);
      for (int j = 0; j < states_; ++j) {
        if (j == i) continue;
        diag += rates_[rate_index(states_, actions_, i, j, a)];
      }
      rates_[rate_index(states_, actions_, i, i, a)] = -diag;
    }
  }
}

const PolynomialField& GameModel::rate_poly(int i, int j, int a) const {
  check_indices(*this, i, j, a);
  return rates_[rate_index(states_, actions_, i, j, a)];
}

const PolynomialField& GameModel::reward_poly(int i, int a) const {
  check_indices(*this, i, 0, a);
  return rewards_[reward_index(actions_, i, a)];
}

GameModel GameModel::with_beta(double beta) const {
  GameModel out = *this;
  out.beta_ = beta;
  return out;
}

double eval_rate(const GameModel& model, int i, int j, int a,
                 const Distribution& m) {
  return model.rate_poly(i, j, a).eval(m.probs());
}

double eval_reward(const GameModel& model, int i, int a,
                   const Distribution& m) {
  return model.reward_poly(i, a).eval(m.probs());
}

Eigen::MatrixXd effective_generator(const GameModel& model,
                                    const StationaryStrategy& pi,
                                    const Distribution& m) {
  const int S = model.state_count();
  const int A = model.action_count();
  if (pi.states() != S || pi.actions() != A || m.size() != S) {
    throw Error(ErrorKind::invalid_argument,
                "effective_generator: shape mismatch");
  }
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(S, S);
  for (int i = 0; i < S; ++i) {
    for (int a = 0; a < A; ++a) {
      const double w = pi.weight(i, a);
      if (w == 0.0) continue;
      for (int j = 0; j < S; ++j) {
        q(i, j) += w * model.rate_poly(i, j, a).eval(m.probs());
      }
    }
  }
  return q;
}

Eigen::MatrixXd generator_for(const GameModel& model,
                              const DeterministicStrategy& d,
                              const Distribution& m) {
  const int S = model.state_count();
  if (d.size() != S || m.size() != S) {
    throw Error(ErrorKind::invalid_argument, "generator_for: shape mismatch");
  }
  Eigen::MatrixXd q(S, S);
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      q(i, j) = model.rate_poly(i, j, d[i]).eval(m.probs());
    }
  }
  return q;
}

Eigen::VectorXd reward_for(const GameModel& model,
                           const DeterministicStrategy& d,
                           const Distribution& m) {
  const int S = model.state_count();
  if (d.size() != S || m.size() != S) {
    throw Error(ErrorKind::invalid_argument, "reward_for: shape mismatch");
  }
  Eigen::VectorXd r(S);
  for (int i = 0; i < S; ++i) {
    r(i) = model.reward_poly(i, d[i]).eval(m.probs());
  }
  return r;
}

ValidationReport validate(const GameModel& model, int grid_resolution) {
  if (grid_resolution < 1) {
    throw Error(ErrorKind::invalid_argument, "validate: grid_resolution < 1");
  }
  ValidationReport report;
  report.grid_resolution = grid_resolution;
  report.beta_ok = model.discount() > 0.0 && model.discount() < 1.0;
  if (!report.beta_ok) {
    std::ostringstream os;
    os << "discount out of range: beta = " << model.discount()
       << " not in (0,1)";
    report.failures.push_back(os.str());
  }

  const int S = model.state_count();
  const int A = model.action_count();
  const auto grid = simplex_grid(S, grid_resolution);
  report.grid_points = grid.size();
  for (const auto& m : grid) {
    for (int a = 0; a < A; ++a) {
      for (int i = 0; i < S; ++i) {
        for (int j = 0; j < S; ++j) {
          if (i == j) continue;
          const double v = model.rate_poly(i, j, a).eval(m);
          if (v < report.worst_violation) {
            report.worst_violation = v;
            report.worst_location = RateViolation{i, j, a, m, v};
          }
        }
      }
    }
  }
  if (report.worst_violation < -1e-12) {
    const auto& loc = *report.worst_location;
    std::ostringstream os;
    os << "negative off-diagonal rate Q[" << loc.i + 1 << "][" << loc.j + 1
       << "][" << loc.a + 1 << "] = " << loc.value << " at m = (";
    for (std::size_t k = 0; k < loc.m.size(); ++k) {
      os << (k ? ", " : "") << loc.m[k];
    }
    os << ")";
    report.failures.push_back(os.str());
  }
  report.passed = report.failures.empty();
  return report;
}

double game_distance(const GameModel& a, const GameModel& b,
                     int grid_resolution) {
  if (a.state_count() != b.state_count() ||
      a.action_count() != b.action_count()) {
    throw Error(ErrorKind::invalid_argument,
                "game_distance: dimension mismatch");
  }
  if (grid_resolution < 1) {
    throw Error(ErrorKind::invalid_argument,
                "game_distance: grid_resolution < 1");
  }
  const int S = a.state_count();
  const int A = a.action_count();
  double rate_sup = 0.0;
  double reward_sup = 0.0;
  for (const auto& m : simplex_grid(S, grid_resolution)) {
    for (int act = 0; act < A; ++act) {
      for (int i = 0; i < S; ++i) {
        for (int j = 0; j < S; ++j) {
          const double da = a.rate_poly(i, j, act).eval(m);
          const double db = b.rate_poly(i, j, act).eval(m);
          rate_sup = std::max(rate_sup, std::abs(da - db));
        }
        const double ra = a.reward_poly(i, act).eval(m);
        const double rb = b.reward_poly(i, act).eval(m);
        reward_sup = std::max(reward_sup, std::abs(ra - rb));
      }
    }
  }
  return rate_sup + reward_sup;
}

int default_grid_resolution(int states) {
  if (states <= 3) return 50;
  if (states <= 5) return 20;
  return 10;
}

}  // namespace mfg
