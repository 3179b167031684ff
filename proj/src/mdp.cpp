#include "mfg/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mfg/parallel.hpp"
#include "mfg/rng.hpp"

namespace mfg {

namespace {

// Bellman action values b_{ia} = r_{ia}(m) + sum_j Q_{ija}(m) V_j.
Eigen::MatrixXd bellman_action_values(const GameModel& model,
                                      const Distribution& m,
                                      const ValueVector& v) {
  const int S = model.state_count();
  const int A = model.action_count();
  Eigen::MatrixXd b(S, A);
  for (int i = 0; i < S; ++i) {
    for (int a = 0; a < A; ++a) {
      double acc = model.reward_poly(i, a).eval(m.probs());
      for (int j = 0; j < S; ++j) {
        acc += model.rate_poly(i, j, a).eval(m.probs()) * v(j);
      }
      b(i, a) = acc;
    }
  }
  return b;
}

std::vector<std::vector<int>> argmax_bands(const Eigen::MatrixXd& b,
                                           const ValueVector& v, double beta,
                                           double tol) {
  std::vector<std::vector<int>> sets(b.rows());
  for (int i = 0; i < b.rows(); ++i) {
    const double target = beta * v(i);
    const double band = tol * (1.0 + std::abs(target));
    for (int a = 0; a < b.cols(); ++a) {
      if (b(i, a) >= target - band) sets[static_cast<std::size_t>(i)].push_back(a);
    }
    if (sets[static_cast<std::size_t>(i)].empty()) {
      // Bellman max sits below beta*V_i by more than the band; keep the
      // argmax so the set is never empty (residual checks flag the defect).
      int best = 0;
      b.row(i).maxCoeff(&best);
      sets[static_cast<std::size_t>(i)].push_back(best);
    }
  }
  return sets;
}

OptimalStrategySet from_value(const GameModel& model, const Distribution& m,
                              const ValueVector& v, double tol) {
  OptimalStrategySet out;
  out.value = v;
  out.per_state_actions =
      argmax_bands(bellman_action_values(model, m, v), v, model.discount(), tol);
  return out;
}

ValueVector enumerate_optimal_value(const GameModel& model,
                                    const Distribution& m) {
  const auto all = enumerate_strategies(model.state_count(),
                                        model.action_count(), kStrategyCap);
  ValueVector best = value_of_deterministic(model, all.front(), m);
  for (std::size_t k = 1; k < all.size(); ++k) {
    const ValueVector v = value_of_deterministic(model, all[k], m);
    best = best.cwiseMax(v);
  }
  return best;
}

}  // namespace

std::vector<DeterministicStrategy> enumerate_strategies(int states,
                                                        int actions,
                                                        std::size_t cap) {
  double total = std::pow(static_cast<double>(actions), states);
  if (total > static_cast<double>(cap)) {
    std::ostringstream os;
    os << "strategy space size " << actions << "^" << states
       << " exceeds cap " << cap
       << "; use the per-state optimal set representation";
    throw Error(ErrorKind::cap_exceeded, os.str());
  }
  std::vector<DeterministicStrategy> out;
  out.reserve(static_cast<std::size_t>(total));
  DeterministicStrategy d{std::vector<int>(static_cast<std::size_t>(states), 0)};
  while (true) {
    out.push_back(d);
    int pos = states - 1;
    while (pos >= 0 && ++d.actions[static_cast<std::size_t>(pos)] == actions) {
      d.actions[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

ValueVector value_of_deterministic(const GameModel& model,
                                   const DeterministicStrategy& d,
                                   const Distribution& m) {
  const int S = model.state_count();
  const Eigen::MatrixXd lhs =
      model.discount() * Eigen::MatrixXd::Identity(S, S) -
      generator_for(model, d, m);
  const Eigen::VectorXd rhs = reward_for(model, d, m);
  const ValueVector v = lhs.partialPivLu().solve(rhs);
  const double residual = (lhs * v - rhs).cwiseAbs().maxCoeff();
  const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  if (!v.allFinite() || residual > 1e-10 * scale) {
    std::ostringstream os;
    os << "value solve residual " << residual
       << " exceeds tolerance; matrix numerically singular (beta = "
       << model.discount() << ")";
    throw Error(ErrorKind::singular, os.str());
  }
  return v;
}

OptimalStrategySet optimal_value(const GameModel& model, const Distribution& m,
                                 double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "optimal_value: tol must be > 0");
  }
  const int S = model.state_count();
  const int A = model.action_count();

  // Myopic start: per-state reward argmax.
  DeterministicStrategy d{std::vector<int>(static_cast<std::size_t>(S), 0)};
  for (int i = 0; i < S; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < A; ++a) {
      const double r = model.reward_poly(i, a).eval(m.probs());
      if (r > best) {
        best = r;
        d.actions[static_cast<std::size_t>(i)] = a;
      }
    }
  }

  const int max_rounds = S * A + 10;
  for (int round = 0; round < max_rounds; ++round) {
    const ValueVector v = value_of_deterministic(model, d, m);
    const Eigen::MatrixXd b = bellman_action_values(model, m, v);
    bool changed = false;
    DeterministicStrategy next = d;
    for (int i = 0; i < S; ++i) {
      int best_a = 0;
      double best_val = b(i, 0);
      for (int a = 1; a < A; ++a) {
        if (b(i, a) > best_val) {
          best_val = b(i, a);
          best_a = a;
        }
      }
      const int cur = d.actions[static_cast<std::size_t>(i)];
      // Stay-put preference breaks improvement ties and prevents cycling.
      if (best_a != cur &&
          best_val > b(i, cur) + 1e-12 * (1.0 + std::abs(best_val))) {
        next.actions[static_cast<std::size_t>(i)] = best_a;
        changed = true;
      }
    }
    if (!changed) return from_value(model, m, v, tol);
    d = next;
  }

  // Numerical degeneracy: fall back to exhaustive enumeration when feasible.
  if (std::pow(static_cast<double>(A), S) <= static_cast<double>(kStrategyCap)) {
    return from_value(model, m, enumerate_optimal_value(model, m), tol);
  }
  throw Error(ErrorKind::no_convergence,
              "policy iteration did not converge and the strategy space "
              "exceeds the enumeration cap");
}

std::vector<DeterministicStrategy> optimal_deterministic_set(
    const GameModel& model, const Distribution& m, double tol,
    std::size_t cap) {
  const OptimalStrategySet opt = optimal_value(model, m, tol);
  if (opt.product_size() > cap) {
    std::ostringstream os;
    os << "optimal strategy product has " << opt.product_size()
       << " elements, above the cap " << cap
       << "; use the per-state optimal set representation";
    throw Error(ErrorKind::cap_exceeded, os.str());
  }
  const int S = model.state_count();
  std::vector<DeterministicStrategy> out;
  DeterministicStrategy d{std::vector<int>(static_cast<std::size_t>(S), 0)};
  std::vector<std::size_t> pick(static_cast<std::size_t>(S), 0);
  const double slack = 10.0 * tol *
                       (1.0 + model.discount() * opt.value.cwiseAbs().maxCoeff()) /
                       model.discount();
  while (true) {
    for (int i = 0; i < S; ++i) {
      d.actions[static_cast<std::size_t>(i)] =
          opt.per_state_actions[static_cast<std::size_t>(i)]
                               [pick[static_cast<std::size_t>(i)]];
    }
    const ValueVector v = value_of_deterministic(model, d, m);
    if ((v - opt.value).cwiseAbs().maxCoeff() > slack) {
      std::ostringstream os;
      os << "strategy assembled from per-state optimal actions misses V* by "
         << (v - opt.value).cwiseAbs().maxCoeff()
         << "; optimality tolerance too loose for this model";
      throw Error(ErrorKind::no_convergence, os.str());
    }
    out.push_back(d);
    int pos = S - 1;
    while (pos >= 0 &&
           ++pick[static_cast<std::size_t>(pos)] ==
               opt.per_state_actions[static_cast<std::size_t>(pos)].size()) {
      pick[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

bool is_strategy_optimal(const GameModel& model, const StationaryStrategy& pi,
                         const Distribution& m, double tol) {
  if (pi.states() != model.state_count() ||
      pi.actions() != model.action_count()) {
    throw Error(ErrorKind::invalid_argument,
                "is_strategy_optimal: shape mismatch");
  }
  const OptimalStrategySet opt = optimal_value(model, m, tol);
  for (int i = 0; i < model.state_count(); ++i) {
    const auto& allowed = opt.per_state_actions[static_cast<std::size_t>(i)];
    for (int a : pi.support(i)) {
      if (!std::binary_search(allowed.begin(), allowed.end(), a)) return false;
    }
  }
  return true;
}

double value_gap(const GameModel& model, const Distribution& m,
                 const DeterministicStrategy& d, std::size_t cap) {
  if (d.size() != model.state_count()) {
    throw Error(ErrorKind::invalid_argument, "value_gap: shape mismatch");
  }
  const auto all =
      enumerate_strategies(model.state_count(), model.action_count(), cap);
  const ValueVector vd = value_of_deterministic(model, d, m);
  double gap = std::numeric_limits<double>::infinity();
  for (const DeterministicStrategy& other : all) {
    if (other == d) continue;
    const ValueVector v = value_of_deterministic(model, other, m);
    gap = std::min(gap, (vd - v).minCoeff());
  }
  if (!std::isfinite(gap)) gap = 0.0;  // single-strategy game: no competitor
  return gap;
}

double default_horizon(const GameModel& model, const StationaryStrategy& pi,
                       const Distribution& m, double target) {
  const int S = model.state_count();
  const int A = model.action_count();
  double r_range = 1.0;
  for (int i = 0; i < S; ++i) {
    double mixed = 0.0;
    for (int a = 0; a < A; ++a) {
      mixed += pi.weight(i, a) * model.reward_poly(i, a).eval(m.probs());
    }
    r_range = std::max(r_range, std::abs(mixed));
  }
  const double beta = model.discount();
  return std::ceil(std::log(r_range / (beta * target)) / beta);
}

MonteCarloEstimate monte_carlo_value(const GameModel& model,
                                     const StationaryStrategy& pi,
                                     const Distribution& m,
                                     const Distribution& x0, double horizon,
                                     int paths, std::uint64_t seed) {
  const int S = model.state_count();
  const int A = model.action_count();
  if (paths < 1) {
    throw Error(ErrorKind::invalid_argument, "monte_carlo_value: paths < 1");
  }
  if (!(horizon > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "monte_carlo_value: horizon <= 0");
  }
  if (x0.size() != S || m.size() != S || pi.states() != S) {
    throw Error(ErrorKind::invalid_argument, "monte_carlo_value: shape mismatch");
  }
  const double beta = model.discount();
  const Eigen::MatrixXd q = effective_generator(model, pi, m);

  // Expected reward rate per state under pi at frozen m.
  Eigen::VectorXd mixed_reward(S);
  for (int i = 0; i < S; ++i) {
    double acc = 0.0;
    for (int a = 0; a < A; ++a) {
      acc += pi.weight(i, a) * model.reward_poly(i, a).eval(m.probs());
    }
    mixed_reward(i) = acc;
  }

  // Jump weights per current state are m- and path-independent; build the
  // rows once instead of per jump.
  std::vector<std::vector<double>> jump_rows(static_cast<std::size_t>(S));
  for (int i = 0; i < S; ++i) {
    jump_rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(S),
                                                  0.0);
    for (int j = 0; j < S; ++j) {
      if (j != i) {
        jump_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            std::max(q(i, j), 0.0);
      }
    }
  }

  // One slot per (starting state, path); written independently, reduced
  // sequentially, so the result is identical for any thread count.
  const std::size_t total = static_cast<std::size_t>(S) * paths;
  std::vector<double> integral(total);
  parallel_for(total, [&](std::size_t idx) {
    const int start = static_cast<int>(idx / static_cast<std::size_t>(paths));
    const std::uint64_t path_id = idx % static_cast<std::size_t>(paths);
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(start), path_id);
    int x = start;
    double t = 0.0;
    double acc = 0.0;
    // After a jump the new interval start equals the old interval end, so
    // its discount factor carries over exactly.
    double disc_t = std::exp(-beta * t);
    while (t < horizon) {
      const double out_rate = -q(x, x);
      if (out_rate <= 1e-14) {
        // Absorbing state: the constant reward integrates in closed form.
        acc += mixed_reward(x) * (disc_t - std::exp(-beta * horizon)) / beta;
        break;
      }
      const double hold = rng.exponential(out_rate);
      const double t_end = std::min(t + hold, horizon);
      const double disc_end = std::exp(-beta * t_end);
      acc += mixed_reward(x) * (disc_t - disc_end) / beta;
      t += hold;
      if (t >= horizon) break;
      disc_t = disc_end;
      x = rng.categorical(jump_rows[static_cast<std::size_t>(x)]);
    }
    integral[idx] = acc;
  });

  MonteCarloEstimate est;
  est.values = Eigen::VectorXd::Zero(S);
  est.std_errors = Eigen::VectorXd::Zero(S);
  est.horizon = horizon;
  est.paths = paths;
  est.seed = seed;
  for (int i = 0; i < S; ++i) {
    const double* begin = integral.data() + static_cast<std::size_t>(i) * paths;
    double mean = 0.0;
    for (int p = 0; p < paths; ++p) mean += begin[p];
    mean /= paths;
    double var = 0.0;
    for (int p = 0; p < paths; ++p) {
      const double dlt = begin[p] - mean;
      var += dlt * dlt;
    }
    var = paths > 1 ? var / (paths - 1) : 0.0;
    est.values(i) = mean;
    est.std_errors(i) = std::sqrt(var / paths);
  }
  for (int i = 0; i < S; ++i) {
    est.aggregate += x0[i] * est.values(i);
    est.aggregate_se += x0[i] * x0[i] * est.std_errors(i) * est.std_errors(i);
  }
  est.aggregate_se = std::sqrt(est.aggregate_se);
  est.truncation_bias_bound =
      std::exp(-beta * horizon) * mixed_reward.cwiseAbs().maxCoeff() / beta;
  return est;
}

}  // namespace mfg
