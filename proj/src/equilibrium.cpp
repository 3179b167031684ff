#include "mfg/equilibrium.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "mfg/simplex.hpp"

namespace mfg {

namespace {

std::string format_support(const std::vector<std::vector<int>>& support) {
  std::ostringstream os;
  for (std::size_t i = 0; i < support.size(); ++i) {
    os << (i ? " x " : "") << "{";
    for (std::size_t k = 0; k < support[i].size(); ++k) {
      os << (k ? "," : "") << support[i][k] + 1;
    }
    os << "}";
  }
  return os.str();
}

bool support_contained(const std::vector<std::vector<int>>& support,
                       const OptimalStrategySet& opt) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (int a : support[i]) {
      if (!std::binary_search(opt.per_state_actions[i].begin(),
                              opt.per_state_actions[i].end(), a)) {
        return false;
      }
    }
  }
  return true;
}

// ---- mixed-support square system -----------------------------------------
//
// Unknowns z: the first S-1 population coordinates, then for each state the
// weights of all support actions beyond the first. Equations: the first S-1
// balance equations, then per-state Bellman indifference between each
// support action and the state's first support action.

struct MixedSystem {
  const GameModel& model;
  std::vector<std::vector<int>> support;
  int S;
  int A;
  int extras;  // sum_i (|support_i| - 1)

  int dim() const { return S - 1 + extras; }

  void unpack(const Eigen::VectorXd& z, std::vector<double>& m,
              std::vector<double>& w) const {
    m.assign(static_cast<std::size_t>(S), 0.0);
    double msum = 0.0;
    for (int i = 0; i < S - 1; ++i) {
      m[static_cast<std::size_t>(i)] = z(i);
      msum += z(i);
    }
    m[static_cast<std::size_t>(S - 1)] = 1.0 - msum;
    w.assign(static_cast<std::size_t>(S) * A, 0.0);
    int zi = S - 1;
    for (int i = 0; i < S; ++i) {
      const auto& sup = support[static_cast<std::size_t>(i)];
      double rest = 0.0;
      for (std::size_t k = 1; k < sup.size(); ++k) {
        const double v = z(zi++);
        w[static_cast<std::size_t>(i) * A + sup[k]] = v;
        rest += v;
      }
      w[static_cast<std::size_t>(i) * A + sup[0]] = 1.0 - rest;
    }
  }

  // False when the embedded value solve degenerates at this iterate.
  bool residual(const Eigen::VectorXd& z, Eigen::VectorXd& f) const {
    std::vector<double> m;
    std::vector<double> w;
    unpack(z, m, w);

    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(S, S);
    for (int i = 0; i < S; ++i) {
      for (int a : support[static_cast<std::size_t>(i)]) {
        const double wa = w[static_cast<std::size_t>(i) * A + a];
        if (wa == 0.0) continue;
        for (int j = 0; j < S; ++j) {
          q(i, j) += wa * model.rate_poly(i, j, a).eval(m);
        }
      }
    }

    f.resize(dim());
    for (int j = 0; j < S - 1; ++j) {
      double acc = 0.0;
      for (int i = 0; i < S; ++i) acc += m[static_cast<std::size_t>(i)] * q(i, j);
      f(j) = acc;
    }

    // Reference values from the lexicographically smallest selection.
    Eigen::MatrixXd lhs =
        model.discount() * Eigen::MatrixXd::Identity(S, S);
    Eigen::VectorXd rhs(S);
    for (int i = 0; i < S; ++i) {
      const int a0 = support[static_cast<std::size_t>(i)][0];
      for (int j = 0; j < S; ++j) lhs(i, j) -= model.rate_poly(i, j, a0).eval(m);
      rhs(i) = model.reward_poly(i, a0).eval(m);
    }
    const Eigen::VectorXd v = lhs.partialPivLu().solve(rhs);
    if (!v.allFinite()) return false;

    int row = S - 1;
    for (int i = 0; i < S; ++i) {
      const auto& sup = support[static_cast<std::size_t>(i)];
      if (sup.size() < 2) continue;
      auto action_value = [&](int a) {
        double acc = model.reward_poly(i, a).eval(m);
        for (int j = 0; j < S; ++j) {
          acc += model.rate_poly(i, j, a).eval(m) * v(j);
        }
        return acc;
      };
      const double base = action_value(sup[0]);
      for (std::size_t k = 1; k < sup.size(); ++k) {
        f(row++) = action_value(sup[k]) - base;
      }
    }
    return true;
  }
};

// Smallest singular value of the finite-difference system Jacobian at z.
// Near zero it flags an underdetermined support (a solution family, not an
// isolated point), e.g. when every action is indifferent identically.
double mixed_jacobian_sigma_min(const MixedSystem& sys,
                                const Eigen::VectorXd& z) {
  const int n = sys.dim();
  Eigen::VectorXd fp(n);
  Eigen::VectorXd fm(n);
  Eigen::MatrixXd jac(n, n);
  const double h = 1e-7;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd zp = z;
    Eigen::VectorXd zm = z;
    zp(k) += h;
    zm(k) -= h;
    if (!sys.residual(zp, fp) || !sys.residual(zm, fm)) return 0.0;
    jac.col(k) = (fp - fm) / (2.0 * h);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  return svd.singularValues().minCoeff();
}

std::optional<Eigen::VectorXd> solve_mixed(const MixedSystem& sys,
                                           Eigen::VectorXd z, double tol) {
  const int n = sys.dim();
  Eigen::VectorXd f(n);
  Eigen::VectorXd fp(n);
  Eigen::VectorXd fm(n);
  Eigen::MatrixXd jac(n, n);
  const double h = 1e-7;
  for (int iter = 0; iter < 80; ++iter) {
    if (!sys.residual(z, f)) return std::nullopt;
    if (f.cwiseAbs().maxCoeff() <= tol) return z;
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd zp = z;
      Eigen::VectorXd zm = z;
      zp(k) += h;
      zm(k) -= h;
      if (!sys.residual(zp, fp) || !sys.residual(zm, fm)) return std::nullopt;
      jac.col(k) = (fp - fm) / (2.0 * h);
    }
    Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite()) return std::nullopt;
    const double norm = step.cwiseAbs().maxCoeff();
    if (norm > 0.5) step *= 0.5 / norm;  // trust region at simplex scale
    z += step;
    for (int k = 0; k < n; ++k) z(k) = std::clamp(z(k), 0.0, 1.0);
  }
  if (sys.residual(z, f) && f.cwiseAbs().maxCoeff() <= tol) return z;
  return std::nullopt;
}

// All per-state supports with 1 <= sum_i (|support_i| - 1) <= budget.
void enumerate_supports(int S, int A, int budget, std::size_t cap,
                        std::vector<std::vector<int>>& partial, int used,
                        std::vector<std::vector<std::vector<int>>>& out) {
  if (static_cast<int>(partial.size()) == S) {
    if (used >= 1) {
      if (out.size() >= cap) {
        throw Error(ErrorKind::cap_exceeded,
                    "mixed support enumeration exceeds the cap; restrict "
                    "supports or lower the support budget");
      }
      out.push_back(partial);
    }
    return;
  }
  for (unsigned mask = 1; mask < (1u << A); ++mask) {
    std::vector<int> subset;
    for (int a = 0; a < A; ++a) {
      if (mask & (1u << a)) subset.push_back(a);
    }
    const int extra = static_cast<int>(subset.size()) - 1;
    if (used + extra > budget) continue;
    partial.push_back(std::move(subset));
    enumerate_supports(S, A, budget, cap, partial, used + extra, out);
    partial.pop_back();
  }
}

double equilibrium_distance(const Equilibrium& a, const Equilibrium& b) {
  return pair_distance(a.m, a.pi, b.m, b.pi);
}

}  // namespace

VerifyReport verify_equilibrium(const GameModel& model, const Distribution& m,
                                const StationaryStrategy& pi, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "verify_equilibrium: tol <= 0");
  }
  VerifyReport report;
  report.tol = tol;
  report.stationary_residual_norm =
      stationary_residual(model, pi, m).cwiseAbs().maxCoeff();

  const OptimalStrategySet opt = optimal_value(model, m, kOptTol);
  const int S = model.state_count();
  report.optimal = true;
  report.per_state_margins.resize(static_cast<std::size_t>(S));
  for (int i = 0; i < S; ++i) {
    const double target = model.discount() * opt.value(i);
    const double band = kOptTol * (1.0 + std::abs(target));
    double margin = std::numeric_limits<double>::infinity();
    for (int a : pi.support(i)) {
      double b = model.reward_poly(i, a).eval(m.probs());
      for (int j = 0; j < S; ++j) {
        b += model.rate_poly(i, j, a).eval(m.probs()) * opt.value(j);
      }
      margin = std::min(margin, b - target);
    }
    report.per_state_margins[static_cast<std::size_t>(i)] = margin;
    if (margin < -band) report.optimal = false;
  }
  report.passed =
      report.stationary_residual_norm <= tol && report.optimal;
  return report;
}

std::vector<Equilibrium> find_deterministic_equilibria(
    const GameModel& model, const EquilibriumSearchOptions& opts,
    std::vector<std::string>* warnings, bool* continuum_warning) {
  const int S = model.state_count();
  const int resolution = opts.stationary_resolution > 0
                             ? opts.stationary_resolution
                             : default_stationary_resolution(S);
  const auto strategies =
      enumerate_strategies(S, model.action_count(), opts.strategy_cap);

  std::vector<Equilibrium> out;
  for (std::size_t si = 0; si < strategies.size(); ++si) {
    const DeterministicStrategy& d = strategies[si];
    const StationaryStrategy pi =
        StationaryStrategy::from_deterministic(d, model.action_count());
    const StationaryPointSet sp =
        stationary_points(model, pi, resolution, opts.stationary_tol);
    if (sp.continuum_warning) {
      if (continuum_warning) *continuum_warning = true;
      if (warnings) {
        std::ostringstream os;
        os << "stationary continuum under deterministic strategy #" << si + 1
           << "; its points are treated as samples";
        warnings->push_back(os.str());
      }
    }
    for (std::size_t k = 0; k < sp.points.size(); ++k) {
      const Distribution& m = sp.points[k];
      const OptimalStrategySet opt =
          optimal_value(model, m, opts.optimality_tol);
      bool d_optimal = true;
      for (int i = 0; i < S && d_optimal; ++i) {
        d_optimal = std::binary_search(
            opt.per_state_actions[static_cast<std::size_t>(i)].begin(),
            opt.per_state_actions[static_cast<std::size_t>(i)].end(), d[i]);
      }
      if (!d_optimal) continue;
      Equilibrium eq{m, pi, EquilibriumKind::deterministic, {},
                     sp.residuals[k], 0.0};
      for (int i = 0; i < S; ++i) eq.support.push_back({d[i]});
      eq.optimality_margin = value_gap(model, m, d, opts.strategy_cap);
      out.push_back(std::move(eq));
    }
  }
  return out;
}

std::vector<Equilibrium> find_mixed_equilibria(
    const GameModel& model,
    const std::vector<std::vector<std::vector<int>>>& supports,
    const EquilibriumSearchOptions& opts, std::vector<std::string>* warnings,
    bool* continuum_warning) {
  const int S = model.state_count();
  const int A = model.action_count();
  std::vector<std::vector<std::vector<int>>> todo = supports;
  if (todo.empty()) {
    std::vector<std::vector<int>> partial;
    enumerate_supports(S, A, opts.support_budget, opts.strategy_cap, partial,
                       0, todo);
    // Smallest supports first: cheaper systems and canonical output order.
    std::stable_sort(todo.begin(), todo.end(),
                     [](const auto& x, const auto& y) {
                       std::size_t nx = 0;
                       std::size_t ny = 0;
                       for (const auto& s : x) nx += s.size();
                       for (const auto& s : y) ny += s.size();
                       return nx < ny;
                     });
  }

  const auto m_seeds = simplex_grid(S, opts.mixed_seed_resolution);
  const double newton_tol = 0.1 * std::min(opts.stationary_tol, 1e-10);
  std::vector<Equilibrium> out;

  for (const auto& support : todo) {
    if (static_cast<int>(support.size()) != S) {
      throw Error(ErrorKind::invalid_argument,
                  "find_mixed_equilibria: support list length != state count");
    }
    MixedSystem sys{model, support, S, A, 0};
    bool any_mixed_state = false;
    bool valid = true;
    for (const auto& sup : support) {
      if (sup.empty()) valid = false;
      for (int a : sup) valid = valid && a >= 0 && a < A;
      sys.extras += static_cast<int>(sup.size()) - 1;
      any_mixed_state = any_mixed_state || sup.size() >= 2;
    }
    if (!valid) {
      throw Error(ErrorKind::invalid_argument,
                  "find_mixed_equilibria: malformed support");
    }
    if (!any_mixed_state) continue;  // deterministic search covers these

    std::size_t converged = 0;
    bool degenerate = false;
    std::vector<Equilibrium> found;
    for (const auto& m_seed : m_seeds) {
      for (const double extra_mass : {0.5, 0.25, 0.75}) {
        Eigen::VectorXd z(sys.dim());
        for (int i = 0; i < S - 1; ++i) z(i) = m_seed[static_cast<std::size_t>(i)];
        int zi = S - 1;
        for (const auto& sup : support) {
          for (std::size_t k = 1; k < sup.size(); ++k) {
            z(zi++) = extra_mass / static_cast<double>(sup.size() - 1);
          }
        }
        const auto sol = solve_mixed(sys, z, newton_tol);
        if (!sol) continue;

        std::vector<double> m_raw;
        std::vector<double> w_raw;
        sys.unpack(*sol, m_raw, w_raw);
        bool feasible = true;
        for (double v : m_raw) feasible = feasible && v >= -1e-10;
        for (int i = 0; i < S; ++i) {
          for (int a : support[static_cast<std::size_t>(i)]) {
            feasible =
                feasible && w_raw[static_cast<std::size_t>(i) * A + a] >= 1e-9;
          }
        }
        if (!feasible) continue;
        ++converged;

        const Distribution m = Distribution::project(m_raw, 1e-9);
        const StationaryStrategy pi(S, A, w_raw);
        const double residual =
            stationary_residual(model, pi, m).cwiseAbs().maxCoeff();
        if (residual > opts.stationary_tol) continue;
        const OptimalStrategySet opt =
            optimal_value(model, m, opts.optimality_tol);
        if (!support_contained(support, opt)) continue;

        double indiff = 0.0;
        for (int i = 0; i < S; ++i) {
          const double target = model.discount() * opt.value(i);
          for (int a : support[static_cast<std::size_t>(i)]) {
            double b = model.reward_poly(i, a).eval(m.probs());
            for (int j = 0; j < S; ++j) {
              b += model.rate_poly(i, j, a).eval(m.probs()) * opt.value(j);
            }
            indiff = std::max(indiff, std::abs(b - target));
          }
        }

        if (mixed_jacobian_sigma_min(sys, *sol) < 1e-6) degenerate = true;

        Equilibrium eq{m, pi, EquilibriumKind::mixed, support, residual,
                       indiff};
        bool duplicate = false;
        for (const Equilibrium& kept : found) {
          if (equilibrium_distance(eq, kept) < kDedupRadius) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) found.push_back(std::move(eq));
      }
    }

    const bool sampled_continuum =
        found.size() >= 3 && 4 * found.size() > converged;
    if (degenerate || sampled_continuum) {
      if (continuum_warning) *continuum_warning = true;
      if (warnings) {
        std::ostringstream os;
        os << "support " << format_support(support)
           << " admits a continuum of equilibria ("
           << (degenerate ? "degenerate system Jacobian; " : "")
           << found.size() << " of " << converged
           << " converged starts are mutually distinct)";
        warnings->push_back(os.str());
      }
    }
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

EquilibriumSet find_all_equilibria(const GameModel& model,
                                   const EquilibriumSearchOptions& opts) {
  const int S = model.state_count();
  EquilibriumSet set;
  set.search.stationary_resolution = opts.stationary_resolution > 0
                                         ? opts.stationary_resolution
                                         : default_stationary_resolution(S);
  set.search.mixed_seed_resolution = opts.mixed_seed_resolution;
  set.search.strategy_cap = opts.strategy_cap;
  set.search.support_budget = opts.support_budget;

  bool continuum = false;
  const auto det =
      find_deterministic_equilibria(model, opts, &set.warnings, &continuum);
  set.search.strategies_examined = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(model.action_count()), S)));

  std::vector<Equilibrium> mixed;
  if (opts.include_mixed && model.action_count() >= 2) {
    std::vector<std::vector<std::vector<int>>> all_supports;
    std::vector<std::vector<int>> partial;
    enumerate_supports(S, model.action_count(), opts.support_budget,
                       opts.strategy_cap, partial, 0, all_supports);
    set.search.supports_examined = all_supports.size();
    mixed = find_mixed_equilibria(model, {}, opts, &set.warnings, &continuum);
  }
  set.continuum_warning = continuum;

  const std::array<const std::vector<Equilibrium>*, 2> sources{&det, &mixed};
  for (const std::vector<Equilibrium>* source : sources) {
    for (const Equilibrium& eq : *source) {
      bool duplicate = false;
      for (const Equilibrium& kept : set.items) {
        if (equilibrium_distance(eq, kept) < set.dedup_radius) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) set.items.push_back(eq);
    }
  }

  if (set.items.empty()) {
    set.warnings.push_back(
        "no equilibria found although existence is guaranteed; refine "
        "--grid or raise the support budget");
  }
  return set;
}

double set_distance(const Distribution& m, const StationaryStrategy& pi,
                    const EquilibriumSet& set) {
  if (set.items.empty()) {
    throw Error(ErrorKind::invalid_argument, "set_distance: empty set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Equilibrium& eq : set.items) {
    best = std::min(best, pair_distance(m, pi, eq.m, eq.pi));
  }
  return best;
}

double hausdorff(const EquilibriumSet& a, const EquilibriumSet& b) {
  if (a.items.empty() || b.items.empty()) {
    throw Error(ErrorKind::invalid_argument, "hausdorff: empty set");
  }
  double h = 0.0;
  for (const auto* from : {&a, &b}) {
    const auto* to = from == &a ? &b : &a;
    for (const Equilibrium& x : from->items) {
      double best = std::numeric_limits<double>::infinity();
      for (const Equilibrium& y : to->items) {
        best = std::min(best, equilibrium_distance(x, y));
      }
      h = std::max(h, best);
    }
  }
  return h;
}

}  // namespace mfg
