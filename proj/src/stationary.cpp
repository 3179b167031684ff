#include "mfg/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "mfg/parallel.hpp"
#include "mfg/simplex.hpp"

namespace mfg {

namespace {

// Q^pi as one polynomial per (i,j), combining actions by their weights.
std::vector<PolynomialField> combined_rate_polys(const GameModel& model,
                                                 const StationaryStrategy& pi) {
  const int S = model.state_count();
  const int A = model.action_count();
  std::vector<PolynomialField> out(static_cast<std::size_t>(S) * S,
                                   PolynomialField::zero(S));
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      PolynomialField& q = out[static_cast<std::size_t>(i) * S + j];
      for (int a = 0; a < A; ++a) {
        const double w = pi.weight(i, a);
        if (w == 0.0) continue;
        q += model.rate_poly(i, j, a).scaled(w);
      }
    }
  }
  return out;
}

Eigen::MatrixXd eval_generator(const std::vector<PolynomialField>& polys,
                               int S, std::span<const double> m) {
  Eigen::MatrixXd q(S, S);
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      q(i, j) = polys[static_cast<std::size_t>(i) * S + j].eval(m);
    }
  }
  return q;
}

std::vector<int> reachable_from(const Eigen::MatrixXd& q, int start,
                                bool reverse) {
  const int S = static_cast<int>(q.rows());
  std::vector<char> seen(static_cast<std::size_t>(S), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < S; ++v) {
      if (v == u || seen[static_cast<std::size_t>(v)]) continue;
      const double rate = reverse ? q(v, u) : q(u, v);
      if (rate > 1e-12) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < S; ++v) {
    if (seen[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

std::string format_states(const std::vector<int>& states) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < states.size(); ++k) {
    os << (k ? ", " : "") << states[k] + 1;
  }
  os << "}";
  return os.str();
}

void require_irreducible(const Eigen::MatrixXd& q) {
  const int S = static_cast<int>(q.rows());
  const auto forward = reachable_from(q, 0, false);
  if (static_cast<int>(forward.size()) != S) {
    std::vector<int> missing;
    std::size_t fi = 0;
    for (int v = 0; v < S; ++v) {
      if (fi < forward.size() && forward[fi] == v) {
        ++fi;
      } else {
        missing.push_back(v);
      }
    }
    throw Error(ErrorKind::irreducible,
                "irreducibility violated: states " + format_states(missing) +
                    " are unreachable from state 1");
  }
  const auto backward = reachable_from(q, 0, true);
  if (static_cast<int>(backward.size()) != S) {
    std::vector<int> missing;
    std::size_t bi = 0;
    for (int v = 0; v < S; ++v) {
      if (bi < backward.size() && backward[bi] == v) {
        ++bi;
      } else {
        missing.push_back(v);
      }
    }
    throw Error(ErrorKind::irreducible,
                "irreducibility violated: state 1 is unreachable from states " +
                    format_states(missing));
  }
}

// Invariant distribution at an arbitrary (possibly slightly off-simplex)
// evaluation point; shared by x_map and the finite-difference Jacobian.
std::vector<double> x_map_raw(const std::vector<PolynomialField>& polys, int S,
                              std::span<const double> m) {
  const Eigen::MatrixXd q = eval_generator(polys, S, m);
  require_irreducible(q);
  Eigen::MatrixXd qt = q.transpose();
  qt.row(S - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(S);
  rhs(S - 1) = 1.0;
  const Eigen::VectorXd x = qt.partialPivLu().solve(rhs);
  const double residual = (x.transpose() * q).cwiseAbs().maxCoeff();
  const double sum_err = std::abs(x.sum() - 1.0);
  if (!x.allFinite() || residual > 1e-10 || sum_err > 1e-10 ||
      x.minCoeff() < -1e-10) {
    std::ostringstream os;
    os << "invariant-distribution solve is numerically singular (residual "
       << residual << ")";
    throw Error(ErrorKind::singular, os.str());
  }
  return std::vector<double>(x.data(), x.data() + S);
}

struct NewtonResult {
  std::vector<double> point;
  double residual = 0.0;
};

// Square system [ (m^T Q(m))_{j<S} ; sum m - 1 ] with analytic Jacobian.
std::optional<NewtonResult> newton_from_seed(
    const std::vector<PolynomialField>& polys, int S,
    std::vector<double> m, double tol) {
  const int max_iters = 60;
  Eigen::VectorXd f(S);
  Eigen::MatrixXd jac(S, S);
  for (int iter = 0; iter < max_iters; ++iter) {
    // Full stationarity residual for the convergence check.
    Eigen::VectorXd balance = Eigen::VectorXd::Zero(S);
    for (int j = 0; j < S; ++j) {
      for (int i = 0; i < S; ++i) {
        balance(j) += m[static_cast<std::size_t>(i)] *
                      polys[static_cast<std::size_t>(i) * S + j].eval(m);
      }
    }
    double msum = 0.0;
    for (double v : m) msum += v;
    bool feasible = std::abs(msum - 1.0) <= 1e-12;
    for (double v : m) feasible = feasible && v >= 0.0;
    if (feasible && balance.cwiseAbs().maxCoeff() <= tol) {
      return NewtonResult{m, balance.cwiseAbs().maxCoeff()};
    }

    f.head(S - 1) = balance.head(S - 1);
    f(S - 1) = msum - 1.0;
    for (int j = 0; j < S - 1; ++j) {
      for (int k = 0; k < S; ++k) {
        double entry = polys[static_cast<std::size_t>(k) * S + j].eval(m);
        for (int i = 0; i < S; ++i) {
          const auto grad =
              polys[static_cast<std::size_t>(i) * S + j].eval_gradient(m);
          entry += m[static_cast<std::size_t>(i)] *
                   grad[static_cast<std::size_t>(k)];
        }
        jac(j, k) = entry;
      }
    }
    jac.row(S - 1).setOnes();

    // Complete orthogonal decomposition gives the minimum-norm step even
    // when the Jacobian is singular (continua of stationary points).
    Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite() || step.cwiseAbs().maxCoeff() > 1e3) {
      return std::nullopt;
    }
    for (int k = 0; k < S; ++k) {
      m[static_cast<std::size_t>(k)] =
          std::max(m[static_cast<std::size_t>(k)] + step(k), 0.0);
    }
  }
  return std::nullopt;
}

}  // namespace

Eigen::VectorXd stationary_residual(const GameModel& model,
                                    const StationaryStrategy& pi,
                                    const Distribution& m) {
  const Eigen::MatrixXd q = effective_generator(model, pi, m);
  const Eigen::Map<const Eigen::VectorXd> mv(m.probs().data(), m.size());
  return (mv.transpose() * q).transpose();
}

bool is_irreducible(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols() || q.rows() < 1) {
    throw Error(ErrorKind::invalid_argument, "is_irreducible: not square");
  }
  const int S = static_cast<int>(q.rows());
  if (S == 1) return true;
  return static_cast<int>(reachable_from(q, 0, false).size()) == S &&
         static_cast<int>(reachable_from(q, 0, true).size()) == S;
}

Distribution x_map(const GameModel& model, const StationaryStrategy& pi,
                   const Distribution& m) {
  const auto polys = combined_rate_polys(model, pi);
  const auto x = x_map_raw(polys, model.state_count(), m.probs());
  return Distribution::project(x, 1e-9);
}

JacobianCertificate fixed_point_jacobian(const GameModel& model,
                                         const StationaryStrategy& pi,
                                         const Distribution& m) {
  const int S = model.state_count();
  const auto polys = combined_rate_polys(model, pi);
  const Eigen::MatrixXd basis = simplex_tangent_basis(S);
  const double h = 1e-6;
  Eigen::MatrixXd g_cols(S, S - 1);
  std::vector<double> plus(static_cast<std::size_t>(S));
  std::vector<double> minus(static_cast<std::size_t>(S));
  for (int k = 0; k < S - 1; ++k) {
    for (int i = 0; i < S; ++i) {
      plus[static_cast<std::size_t>(i)] = m[i] + h * basis(i, k);
      minus[static_cast<std::size_t>(i)] = m[i] - h * basis(i, k);
    }
    const auto xp = x_map_raw(polys, S, plus);
    const auto xm = x_map_raw(polys, S, minus);
    for (int i = 0; i < S; ++i) {
      const double gp = plus[static_cast<std::size_t>(i)] -
                        xp[static_cast<std::size_t>(i)];
      const double gm = minus[static_cast<std::size_t>(i)] -
                        xm[static_cast<std::size_t>(i)];
      g_cols(i, k) = (gp - gm) / (2.0 * h);
    }
  }
  JacobianCertificate cert;
  cert.tangent_jacobian = basis.transpose() * g_cols;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cert.tangent_jacobian);
  cert.smallest_singular_value = svd.singularValues().minCoeff();
  return cert;
}

StationaryPointSet stationary_points(const GameModel& model,
                                     const StationaryStrategy& pi,
                                     int grid_resolution, double tol) {
  if (grid_resolution < 2) {
    throw Error(ErrorKind::invalid_argument,
                "stationary_points: grid_resolution must be >= 2");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "stationary_points: tol <= 0");
  }
  const int S = model.state_count();
  const auto polys = combined_rate_polys(model, pi);
  const auto seeds = simplex_grid(S, grid_resolution);

  std::vector<std::optional<NewtonResult>> slots(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t k) {
    slots[k] = newton_from_seed(polys, S, seeds[k], tol);
  });

  StationaryPointSet out;
  out.seeds_used = static_cast<int>(seeds.size());
  out.grid_resolution = grid_resolution;

  std::size_t converged = 0;
  for (const auto& slot : slots) {
    if (!slot) continue;
    ++converged;
    const Distribution cand = Distribution::project(slot->point, 1e-8);
    bool duplicate = false;
    for (const Distribution& kept : out.points) {
      double dist = 0.0;
      for (int i = 0; i < S; ++i) {
        dist = std::max(dist, std::abs(cand[i] - kept[i]));
      }
      if (dist < out.dedup_radius) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    // Re-check the residual at the projected point, independently of the
    // solver's internal bookkeeping.
    const double residual =
        stationary_residual(model, pi, cand).cwiseAbs().maxCoeff();
    if (residual > tol) continue;
    out.points.push_back(cand);
    out.residuals.push_back(residual);
  }

  if (out.points.empty()) {
    out.warnings.push_back(
        "no stationary points found: generators on the simplex always admit "
        "one, so the search grid is too coarse or the model is inconsistent");
  }
  const std::size_t distinct = out.points.size();
  if (distinct >= 3 && 4 * distinct > converged) {
    out.continuum_warning = true;
    std::ostringstream os;
    os << "non-isolated stationary set: " << distinct << " of " << converged
       << " converged seeds are mutually distinct; the listed points sample "
          "a continuum";
    out.warnings.push_back(os.str());
  }
  return out;
}

int default_stationary_resolution(int states) {
  if (states <= 3) return 20;
  if (states <= 5) return 8;
  return 4;
}

}  // namespace mfg
