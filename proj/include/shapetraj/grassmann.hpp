#pragma once

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "shapetraj/error.hpp"
#include "shapetraj/psd_point.hpp"

namespace shapetraj {

// Below this value sin(theta) is treated as zero when pseudo-inverting
// diag(sin theta) in the geodesic direction matrix.
inline constexpr double kSinCutoff = 1e-12;

/// Principal angles between two 2-dimensional subspaces, ascending in [0, pi/2].
struct PrincipalAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double squared_norm() const { return theta1 * theta1 + theta2 * theta2; }
  double norm() const { return std::sqrt(squared_norm()); }
};

/// Two points whose bases were jointly rotated within their fibers so that
/// U1^T U2 = diag(cos theta_i). All of the pseudo-geodesic machinery operates
/// on this canonical representative.
struct AlignedPair {
  PsdPoint first;
  PsdPoint second;
  PrincipalAngles angles;
};

namespace detail {

// Round-off can push singular values of U1^T U2 slightly above 1.
inline double clamp_cosine(double c) { return std::clamp(c, 0.0, 1.0); }

}  // namespace detail

/// Canonical fiber representative: SVD U1^T U2 = O1 Sigma O2^T with singular
/// values descending, rotate each point by its O. The implied Gram matrices
/// are unchanged; the angles are arccos of the clamped singular values.
inline AlignedPair canonical_align(const PsdPoint& a, const PsdPoint& b) {
  detail::require_same_count(a, b, "canonical_align");
  if (detail::bitwise_equal(a, b)) return AlignedPair{a, b, PrincipalAngles{}};
  Mat2 t = a.basis.transpose() * b.basis;
  Eigen::JacobiSVD<Mat2> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat2 o1 = svd.matrixU();
  Mat2 o2 = svd.matrixV();
  PrincipalAngles angles{
      std::acos(detail::clamp_cosine(svd.singularValues()(0))),
      std::acos(detail::clamp_cosine(svd.singularValues()(1)))};
  PsdPoint first{a.basis * o1, o1.transpose() * a.shape * o1};
  PsdPoint second{b.basis * o2, o2.transpose() * b.shape * o2};
  first.shape = 0.5 * (first.shape + first.shape.transpose());
  second.shape = 0.5 * (second.shape + second.shape.transpose());
  return AlignedPair{std::move(first), std::move(second), angles};
}

/// Principal angles without forming the aligned bases.
inline PrincipalAngles principal_angles(const PsdPoint& a, const PsdPoint& b) {
  detail::require_same_count(a, b, "principal_angles");
  if (detail::bitwise_equal(a, b)) return PrincipalAngles{};
  Mat2 t = a.basis.transpose() * b.basis;
  Eigen::JacobiSVD<Mat2> svd(t);
  return PrincipalAngles{
      std::acos(detail::clamp_cosine(svd.singularValues()(0))),
      std::acos(detail::clamp_cosine(svd.singularValues()(1)))};
}

/// Riemannian distance ||Theta||_F on G(2,n); zero iff the spans coincide.
inline double grassmann_distance(const PsdPoint& a, const PsdPoint& b) {
  return principal_angles(a, b).norm();
}

namespace detail {

// Geodesic evaluated on an already aligned pair:
// U(t) = U1 cos(Theta t) + M sin(Theta t), M = (U2 - U1 diag(cos theta)) F.
inline MatX2 grassmann_geodesic_aligned(const AlignedPair& pair, double t) {
  const PrincipalAngles& th = pair.angles;
  Vec2 theta(th.theta1, th.theta2);
  Vec2 cos_t(std::cos(theta(0) * t), std::cos(theta(1) * t));
  Vec2 sin_t(std::sin(theta(0) * t), std::sin(theta(1) * t));
  Vec2 f;
  for (int i = 0; i < 2; ++i) {
    double s = std::sin(theta(i));
    f(i) = s > kSinCutoff ? 1.0 / s : 0.0;
  }
  Vec2 cos0(std::cos(theta(0)), std::cos(theta(1)));
  MatX2 m = (pair.second.basis - pair.first.basis * cos0.asDiagonal()) * f.asDiagonal();
  MatX2 u = pair.first.basis * cos_t.asDiagonal() + m * sin_t.asDiagonal();
  return orthonormalize_columns(u);
}

}  // namespace detail

/// Point of the Grassmann geodesic from span(a) to span(b) at parameter t,
/// returned as an n x 2 orthonormal basis.
inline MatX2 grassmann_geodesic(const PsdPoint& a, const PsdPoint& b, double t) {
  return detail::grassmann_geodesic_aligned(canonical_align(a, b), t);
}

}  // namespace shapetraj
