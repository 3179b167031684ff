#include "mfg/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "mfg/types.hpp"

namespace mfg {

namespace {

void enumerate_compositions(int dim, int remaining, int resolution,
                            std::vector<int>& partial,
                            std::vector<std::vector<double>>& out) {
  if (static_cast<int>(partial.size()) == dim - 1) {
    std::vector<double> point(dim);
    for (int i = 0; i < dim - 1; ++i) {
      point[i] = static_cast<double>(partial[i]) / resolution;
    }
    point[dim - 1] = static_cast<double>(remaining) / resolution;
    out.push_back(std::move(point));
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    partial.push_back(k);
    enumerate_compositions(dim, remaining - k, resolution, partial, out);
    partial.pop_back();
  }
}

}  // namespace

std::vector<std::vector<double>> simplex_grid(int dim, int resolution) {
  if (dim < 1 || resolution < 1) {
    throw Error(ErrorKind::invalid_argument,
                "simplex_grid: dim and resolution must be positive");
  }
  std::vector<std::vector<double>> out;
  out.reserve(simplex_grid_size(dim, resolution));
  std::vector<int> partial;
  enumerate_compositions(dim, resolution, resolution, partial, out);
  return out;
}

std::size_t simplex_grid_size(int dim, int resolution) {
  // C(resolution + dim - 1, dim - 1)
  std::size_t result = 1;
  for (int i = 1; i <= dim - 1; ++i) {
    result = result * (resolution + i) / i;
  }
  return result;
}

Eigen::MatrixXd simplex_tangent_basis(int dim) {
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(dim);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(dim - 1);
}

std::vector<std::vector<double>> simplex_ball_grid(
    const std::vector<double>& m, double eps, int points_per_axis) {
  const int dim = static_cast<int>(m.size());
  if (dim < 2 || eps <= 0.0 || points_per_axis < 1) {
    throw Error(ErrorKind::invalid_argument, "simplex_ball_grid: bad inputs");
  }
  const Eigen::MatrixXd basis = simplex_tangent_basis(dim);
  const Eigen::Map<const Eigen::VectorXd> center(m.data(), dim);

  std::vector<double> axis_values;
  if (points_per_axis == 1) {
    axis_values.push_back(0.0);
  } else {
    for (int k = 0; k < points_per_axis; ++k) {
      axis_values.push_back(-eps + 2.0 * eps * k / (points_per_axis - 1));
    }
  }

  std::vector<std::vector<double>> out;
  out.push_back(m);
  std::vector<int> idx(dim - 1, 0);
  while (true) {
    Eigen::VectorXd coeff(dim - 1);
    bool all_zero = true;
    for (int k = 0; k < dim - 1; ++k) {
      coeff(k) = axis_values[idx[k]];
      all_zero = all_zero && coeff(k) == 0.0;
    }
    if (!all_zero) {
      Eigen::VectorXd cand = center + basis * coeff;
      bool keep = true;
      double sum = 0.0;
      double dist = 0.0;
      for (int i = 0; i < dim; ++i) {
        if (cand(i) < -1e-12) {
          keep = false;
          break;
        }
        cand(i) = std::max(cand(i), 0.0);
        sum += cand(i);
        dist = std::max(dist, std::abs(cand(i) - m[static_cast<std::size_t>(i)]));
      }
      if (keep && dist <= eps + 1e-12 && sum > 0.0) {
        std::vector<double> point(dim);
        for (int i = 0; i < dim; ++i) point[i] = cand(i) / sum;
        out.push_back(std::move(point));
      }
    }
    int pos = 0;
    while (pos < dim - 1 && ++idx[pos] == points_per_axis) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == dim - 1) break;
  }
  return out;
}

}  // namespace mfg
