#ifndef MFG_SIMPLEX_HPP
#define MFG_SIMPLEX_HPP

#include <Eigen/Dense>
#include <vector>

namespace mfg {

// All points of the uniform simplex grid with `resolution` subdivisions per
// edge: coordinates k_i / resolution with k_i nonnegative integers summing
// to resolution. Deterministic lexicographic order.
std::vector<std::vector<double>> simplex_grid(int dim, int resolution);

std::size_t simplex_grid_size(int dim, int resolution);

// Orthonormal basis of the simplex tangent space {v : sum v_i = 0},
// as columns of an S x (S-1) matrix.
Eigen::MatrixXd simplex_tangent_basis(int dim);

// Grid sample of the closed max-norm ball of radius eps around m,
// intersected with the simplex: k points per tangent axis. Always contains
// m itself. Points are exact simplex members (sum 1, entries >= 0).
std::vector<std::vector<double>> simplex_ball_grid(
    const std::vector<double>& m, double eps, int points_per_axis);

}  // namespace mfg

#endif  // MFG_SIMPLEX_HPP
