#pragma once

#include <cmath>

#include "shapetraj/linalg.hpp"

namespace shapetraj {

/// A 2x2 symmetric positive definite matrix. Holds the shape factor R^2 of a
/// Gram representation, or the spatial covariance of a landmark configuration.
struct Spd2 {
  Mat2 m = Mat2::Identity();
};

/// Affine-invariant distance ||log(a^{-1/2} b a^{-1/2})||_F on the SPD cone.
/// Symmetric, zero iff a == b, invariant under congruence a -> w^T a w.
inline double spd_distance(const Spd2& a, const Spd2& b) {
  check_spd(a.m, "spd_distance");
  check_spd(b.m, "spd_distance");
  // identical inputs give an exact zero instead of eigensolver round-off
  if ((a.m.array() == b.m.array()).all()) return 0.0;
  Mat2 w = spd_inv_sqrt(a.m);
  detail::SymEigen2 e = detail::sym_eigen(w * b.m * w);
  if (!(e.values(0) > 0.0))
    throw NotPositiveDefinite("spd_distance: pencil has a non-positive eigenvalue");
  double l0 = std::log(e.values(0));
  double l1 = std::log(e.values(1));
  return std::sqrt(l0 * l0 + l1 * l1);
}

/// Geodesic a^{1/2} exp(t log(a^{-1/2} b a^{-1/2})) a^{1/2} for the
/// affine-invariant metric; t=0 gives a, t=1 gives b.
inline Spd2 spd_geodesic(const Spd2& a, const Spd2& b, double t) {
  check_spd(a.m, "spd_geodesic");
  check_spd(b.m, "spd_geodesic");
  Mat2 r = spd_sqrt(a.m);
  Mat2 w = spd_inv_sqrt(a.m);
  Mat2 middle = sym_exp(t * spd_log(w * b.m * w));
  Mat2 out = r * middle * r;
  out = 0.5 * (out + out.transpose());
  return Spd2{out};
}

}  // namespace shapetraj
