#pragma once

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "shapetraj/error.hpp"
#include "shapetraj/linalg.hpp"
#include "shapetraj/spd2.hpp"

namespace shapetraj {

// A configuration is treated as degenerate (collinear points) when the
// smaller singular value drops below this fraction of the larger one.
inline constexpr double kRankTolerance = 1e-8;

/// Centered n x 2 landmark matrix of rank 2: one video frame with the
/// center of mass moved to the origin.
struct LandmarkConfig {
  MatX2 points;
  Eigen::Index count() const { return points.rows(); }
};

/// Subtracts the center of mass and validates the result.
/// Throws InvalidInput for n < 3 or non-finite entries and
/// DegenerateConfiguration when the centered matrix is rank deficient.
inline LandmarkConfig center_landmarks(const MatX2& raw) {
  if (raw.rows() < 3)
    throw InvalidInput("center_landmarks: need at least 3 landmarks, got " +
                       std::to_string(raw.rows()));
  if (!raw.allFinite())
    throw InvalidInput("center_landmarks: non-finite coordinate");
  MatX2 centered = raw.rowwise() - raw.colwise().mean();
  Eigen::JacobiSVD<MatX2> svd(centered);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(1);
  if (!(smin >= kRankTolerance * smax) || smax == 0.0)
    throw DegenerateConfiguration(
        "center_landmarks: configuration is collinear (singular values " +
        std::to_string(smax) + ", " + std::to_string(smin) + ")");
  return LandmarkConfig{std::move(centered)};
}

/// Gram matrix Z Z^T: all pairwise inner products, n x n PSD of rank 2.
inline MatX gram(const LandmarkConfig& z) {
  return z.points * z.points.transpose();
}

/// Augmented pairwise square-distance matrix, (n+1) x (n+1). Row and column 0
/// hold the squared distances to the center of mass; the diagonal is zero.
inline MatX squared_distance_matrix(const LandmarkConfig& z) {
  Eigen::Index n = z.count();
  VecX sq = z.points.rowwise().squaredNorm();
  MatX d = MatX::Zero(n + 1, n + 1);
  d.block(1, 0, n, 1) = sq;
  d.block(0, 1, 1, n) = sq.transpose();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = (z.points.row(i) - z.points.row(j)).squaredNorm();
      d(i + 1, j + 1) = v;
      d(j + 1, i + 1) = v;
    }
  return d;
}

/// Spatial covariance Z^T Z / (n - 1) of the centered landmarks.
inline Spd2 covariance(const LandmarkConfig& z) {
  Mat2 c = z.points.transpose() * z.points / double(z.count() - 1);
  return Spd2{0.5 * (c + c.transpose())};
}

}  // namespace shapetraj
