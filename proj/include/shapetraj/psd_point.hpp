#pragma once

#include "shapetraj/landmark.hpp"
#include "shapetraj/linalg.hpp"

namespace shapetraj {

/// Factored point of S+(2,n): the Gram matrix G = U S U^T is stored as an
/// n x 2 orthonormal basis U and a 2x2 SPD shape S = R^2. The n x n matrix
/// itself is never materialized except by baselines that need it.
struct PsdPoint {
  MatX2 basis;                 // U, orthonormal columns
  Mat2 shape = Mat2::Identity();  // S = R^2
  Eigen::Index count() const { return basis.rows(); }
};

/// Polar decomposition Z = U R with R = (Z^T Z)^{1/2}; returns (U, R^2).
inline PsdPoint polar_decompose(const LandmarkConfig& z) {
  Mat2 s = z.points.transpose() * z.points;
  s = 0.5 * (s + s.transpose());
  detail::SymEigen2 e = detail::sym_eigen(s);
  if (!(e.values(0) > kRankTolerance * kRankTolerance * e.values(1)) ||
      !(e.values(1) > 0.0))
    throw DegenerateConfiguration("polar_decompose: Z^T Z is numerically singular");
  Vec2 inv_r(1.0 / std::sqrt(e.values(0)), 1.0 / std::sqrt(e.values(1)));
  MatX2 u = z.points * (e.vectors * inv_r.asDiagonal() * e.vectors.transpose());
  return PsdPoint{std::move(u), s};
}

/// The implied n x n Gram matrix U S U^T.
inline MatX implied_gram(const PsdPoint& p) {
  return p.basis * p.shape * p.basis.transpose();
}

namespace detail {

inline void require_same_count(const PsdPoint& a, const PsdPoint& b,
                               const char* what) {
  if (a.count() != b.count())
    throw DimensionMismatch(std::string(what) + ": landmark counts differ (" +
                            std::to_string(a.count()) + " vs " +
                            std::to_string(b.count()) + ")");
}

// Identical representations short-circuit the distance machinery so that a
// point compared against itself yields an exact zero, not round-off noise.
inline bool bitwise_equal(const PsdPoint& a, const PsdPoint& b) {
  return a.count() == b.count() &&
         (a.basis.array() == b.basis.array()).all() &&
         (a.shape.array() == b.shape.array()).all();
}

}  // namespace detail

}  // namespace shapetraj
