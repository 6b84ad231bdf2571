#pragma once

#include <cmath>
#include <string>

#include "shapetraj/grassmann.hpp"
#include "shapetraj/spd2.hpp"

namespace shapetraj {

/// Closeness d_{S+}(G1, G2) = ||Theta||_F^2 + k ||log R1^{-1} R2^2 R1^{-1}||_F^2,
/// both terms computed on the canonically aligned pair. This is the squared
/// length of the pseudo-geodesic, not a true Riemannian distance (no triangle
/// inequality). k = 0 collapses it to the squared Grassmann distance.
inline double closeness(const PsdPoint& a, const PsdPoint& b, double k) {
  if (k < 0.0)
    throw InvalidParameter("closeness: k must be nonnegative, got " + std::to_string(k));
  if (k == 0.0) return principal_angles(a, b).squared_norm();
  AlignedPair pair = canonical_align(a, b);
  double dp = spd_distance(Spd2{pair.first.shape}, Spd2{pair.second.shape});
  return pair.angles.squared_norm() + k * dp * dp;
}

/// Pseudo-geodesic C(t) = U(t) R^2(t) U(t)^T combining the Grassmann geodesic
/// of the aligned bases with the SPD geodesic of the aligned shapes.
/// Endpoints reproduce the Gram matrices of a and b.
inline PsdPoint pseudo_geodesic(const PsdPoint& a, const PsdPoint& b, double t) {
  AlignedPair pair = canonical_align(a, b);
  MatX2 u = detail::grassmann_geodesic_aligned(pair, t);
  Spd2 s = spd_geodesic(Spd2{pair.first.shape}, Spd2{pair.second.shape}, t);
  return PsdPoint{std::move(u), s.m};
}

/// Horizontal metric of Eq-style form tr(M1^T M2) + k tr(N1 S^{-1} N2 S^{-1})
/// at the point (at_basis, at_shape). The M_i must be horizontal: M^T U = 0.
inline double horizontal_inner_product(const MatX2& m1, const Mat2& n1,
                                       const MatX2& m2, const Mat2& n2,
                                       const MatX2& at_basis, const Spd2& at_shape,
                                       double k) {
  check_spd(at_shape.m, "horizontal_inner_product");
  auto check_horizontal = [&](const MatX2& m, const char* name) {
    if (m.rows() != at_basis.rows())
      throw DimensionMismatch(std::string("horizontal_inner_product: ") + name +
                              " has wrong row count");
    double tol = 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m.transpose() * at_basis).cwiseAbs().maxCoeff() > tol)
      throw NotHorizontal(std::string("horizontal_inner_product: ") + name +
                          "^T U is not zero");
  };
  check_horizontal(m1, "M1");
  check_horizontal(m2, "M2");
  Mat2 s_inv = at_shape.m.inverse();
  return (m1.transpose() * m2).trace() + k * (n1 * s_inv * n2 * s_inv).trace();
}

}  // namespace shapetraj
