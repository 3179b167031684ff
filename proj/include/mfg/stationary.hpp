#ifndef MFG_STATIONARY_HPP
#define MFG_STATIONARY_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mfg/model.hpp"
#include "mfg/types.hpp"

namespace mfg {

inline constexpr double kStationaryTol = 1e-10;
inline constexpr double kDedupRadius = 1e-6;

struct StationaryPointSet {
  std::vector<Distribution> points;
  std::vector<double> residuals;  // per point, max-norm of m^T Q^pi(m)
  int seeds_used = 0;
  int grid_resolution = 0;
  double dedup_radius = kDedupRadius;
  // Set when > 25% of converged seeds land on mutually distinct points;
  // local analysis downstream treats the listed points as samples of a
  // continuum, not isolated solutions.
  bool continuum_warning = false;
  std::vector<std::string> warnings;
};

struct JacobianCertificate {
  // Jacobian of g(m) = m - x(m) in an orthonormal tangent basis.
  Eigen::MatrixXd tangent_jacobian;
  double smallest_singular_value = 0.0;
  bool certified() const { return smallest_singular_value > 1e-6; }
};

// (sum_i m_i Q^pi_ij(m))_j; the zero vector iff m is stationary under pi.
Eigen::VectorXd stationary_residual(const GameModel& model,
                                    const StationaryStrategy& pi,
                                    const Distribution& m);

// Unique invariant distribution of the irreducible generator Q^pi(m):
// solves the transposed system with the last balance equation replaced by
// normalization. Reducibility raises Error(irreducible) naming a
// non-communicating class.
Distribution x_map(const GameModel& model, const StationaryStrategy& pi,
                   const Distribution& m);

// Strong connectivity of the directed graph with edges Q_ij > 1e-12, i != j.
bool is_irreducible(const Eigen::MatrixXd& q);

// Central finite differences (step 1e-6) of g(m) = m - x(m) restricted to
// the simplex tangent space. A smallest singular value above 1e-6 certifies
// an isolated, degree-nonzero fixed point of x.
JacobianCertificate fixed_point_jacobian(const GameModel& model,
                                         const StationaryStrategy& pi,
                                         const Distribution& m);

// Multi-start Newton on [ (m^T Q^pi(m))_{j<S} ; sum_i m_i - 1 ] from every
// simplex grid seed, iterates clipped to m >= 0, converged points
// deduplicated. Completeness is heuristic; seeds_used reports the coverage.
StationaryPointSet stationary_points(const GameModel& model,
                                     const StationaryStrategy& pi,
                                     int grid_resolution,
                                     double tol = kStationaryTol);

// Default seeding resolution for stationary searches.
int default_stationary_resolution(int states);

}  // namespace mfg

#endif  // MFG_STATIONARY_HPP
