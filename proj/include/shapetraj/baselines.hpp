#pragma once

#include <cmath>
#include <string>

#include "shapetraj/psd_point.hpp"

namespace shapetraj {

/// Euclidean flat distance ||G1 - G2||_F between the implied Gram matrices,
/// evaluated through the factors: ||G||_F^2 = ||S||_F^2 and
/// <G1, G2> = tr(S1 T S2 T^T) with T = U1^T U2, so no n x n matrix is formed.
inline double flat_distance(const PsdPoint& a, const PsdPoint& b) {
  detail::require_same_count(a, b, "flat_distance");
  if (detail::bitwise_equal(a, b)) return 0.0;
  Mat2 t = a.basis.transpose() * b.basis;
  double cross = (a.shape * t * b.shape * t.transpose()).trace();
  double sq = a.shape.squaredNorm() + b.shape.squaredNorm() - 2.0 * cross;
  return std::sqrt(std::max(0.0, sq));
}

/// Trace-scaled default regularization for the full-rank baseline:
/// 1e-6 times the mean diagonal entry of the two Gram matrices.
inline double default_regularization(const PsdPoint& a, const PsdPoint& b) {
  double tr = a.shape.trace() + b.shape.trace();  // tr(USU^T) = tr(S)
  return 1e-6 * tr / double(a.count() + b.count());
}

/// Rank-regularized baseline: affine-invariant distance in P_n between
/// G1 + eps I and G2 + eps I. Works on the full n x n matrices by design;
/// this is the expensive comparison the closeness is benchmarked against.
inline double regularized_spd_distance(const PsdPoint& a, const PsdPoint& b,
                                       double epsilon) {
  detail::require_same_count(a, b, "regularized_spd_distance");
  if (!(epsilon > 0.0))
    throw InvalidParameter("regularized_spd_distance: epsilon must be positive");
  if (detail::bitwise_equal(a, b)) return 0.0;
  Eigen::Index n = a.count();
  MatX g1 = implied_gram(a) + epsilon * MatX::Identity(n, n);
  MatX g2 = implied_gram(b) + epsilon * MatX::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<MatX> es1(g1);
  VecX inv_sqrt = es1.eigenvalues().cwiseSqrt().cwiseInverse();
  MatX w = es1.eigenvectors() * inv_sqrt.asDiagonal() * es1.eigenvectors().transpose();
  Eigen::SelfAdjointEigenSolver<MatX> es2(w * g2 * w);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double lambda = es2.eigenvalues()(i);
    if (!(lambda > 0.0))
      throw NotPositiveDefinite("regularized_spd_distance: pencil not positive definite");
    double l = std::log(lambda);
    sum += l * l;
  }
  return std::sqrt(sum);
}

}  // namespace shapetraj
