#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "shapetraj/error.hpp"

namespace shapetraj {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using MatX = Eigen::MatrixXd;
using MatX2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;
using VecX = Eigen::VectorXd;

namespace detail {

inline bool nearly_symmetric(const Mat2& a, double tol = 1e-12) {
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return std::abs(a(0, 1) - a(1, 0)) <= tol * scale;
}

struct SymEigen2 {
  Vec2 values;  // ascending
  Mat2 vectors;
};

inline SymEigen2 sym_eigen(const Mat2& a) {
  Eigen::SelfAdjointEigenSolver<Mat2> es;
  es.compute(a);
  return {es.eigenvalues(), es.eigenvectors()};
}

// f applied to the eigenvalues of a symmetric matrix; exact for 2x2.
template <typename Fn>
Mat2 sym_apply(const Mat2& a, Fn f) {
  SymEigen2 e = sym_eigen(a);
  Vec2 mapped(f(e.values(0)), f(e.values(1)));
  return e.vectors * mapped.asDiagonal() * e.vectors.transpose();
}

}  // namespace detail

/// Throws NotPositiveDefinite unless m is symmetric with positive eigenvalues.
inline void check_spd(const Mat2& m, const char* what) {
  if (!detail::nearly_symmetric(m))
    throw NotPositiveDefinite(std::string(what) + ": matrix is not symmetric");
  detail::SymEigen2 e = detail::sym_eigen(m);
  if (!(e.values(0) > 0.0))
    throw NotPositiveDefinite(std::string(what) + ": non-positive eigenvalue " +
                              std::to_string(e.values(0)));
}

inline Mat2 spd_sqrt(const Mat2& m) {
  return detail::sym_apply(m, [](double x) { return std::sqrt(x); });
}

inline Mat2 spd_inv_sqrt(const Mat2& m) {
  return detail::sym_apply(m, [](double x) { return 1.0 / std::sqrt(x); });
}

inline Mat2 spd_log(const Mat2& m) {
  return detail::sym_apply(m, [](double x) { return std::log(x); });
}

inline Mat2 sym_exp(const Mat2& m) {
  return detail::sym_apply(m, [](double x) { return std::exp(x); });
}

/// Thin QR of an n x 2 matrix with the sign convention diag(R) >= 0,
/// so the result is a deterministic orthonormal basis of the same span.
inline MatX2 orthonormalize_columns(const MatX2& u) {
  Eigen::HouseholderQR<MatX2> qr(u);
  MatX2 q = qr.householderQ() * MatX::Identity(u.rows(), 2);
  Mat2 r = qr.matrixQR().topRows<2>().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace shapetraj
