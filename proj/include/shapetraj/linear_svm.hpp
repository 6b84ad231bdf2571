#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "shapetraj/linalg.hpp"
#include "shapetraj/rng.hpp"

namespace shapetraj {

struct LinearSvmResult {
  VecX w;               // weights over the input features
  double bias = 0.0;
  double duality_gap = 0.0;  // relative gap at termination
  int epochs = 0;
};

/// L2-regularized hinge-loss SVM, min_w 0.5 ||w||^2 + C sum max(0, 1 - y w^T x),
/// solved in the dual by coordinate descent. The bias is carried as an
/// augmented constant feature. Deterministic for a fixed seed: coordinate
/// order is a seeded permutation redrawn each epoch. Stops when the relative
/// duality gap falls below tol or after max_epochs, whichever comes first.
inline LinearSvmResult train_linear_svm_hinge(const MatX& x,
                                              const std::vector<int>& y,
                                              double c, std::uint64_t seed,
                                              double tol = 1e-6,
                                              int max_epochs = 4000) {
  const Eigen::Index m = x.rows();
  const Eigen::Index dim = x.cols() + 1;  // + bias feature
  MatX xa(m, dim);
  xa.leftCols(x.cols()) = x;
  xa.col(dim - 1).setOnes();

  VecX alpha = VecX::Zero(m);
  VecX w = VecX::Zero(dim);
  VecX q_diag(m);
  for (Eigen::Index i = 0; i < m; ++i) q_diag(i) = xa.row(i).squaredNorm();

  Rng rng(seed);
  std::vector<Eigen::Index> order(m);
  std::iota(order.begin(), order.end(), Eigen::Index(0));

  LinearSvmResult out;
  for (int epoch = 1; epoch <= max_epochs; ++epoch) {
    rng.shuffle(order);
    for (Eigen::Index idx : order) {
      double yi = double(y[idx]);
      double g = yi * xa.row(idx).dot(w) - 1.0;
      double pg = g;
      if (alpha(idx) <= 0.0) pg = std::min(g, 0.0);
      else if (alpha(idx) >= c) pg = std::max(g, 0.0);
      if (std::abs(pg) > 1e-14) {
        double old = alpha(idx);
        alpha(idx) = std::clamp(old - g / q_diag(idx), 0.0, c);
        w += (alpha(idx) - old) * yi * xa.row(idx).transpose();
      }
    }
    double hinge = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      hinge += std::max(0.0, 1.0 - double(y[i]) * xa.row(i).dot(w));
    double primal = 0.5 * w.squaredNorm() + c * hinge;
    double dual = alpha.sum() - 0.5 * w.squaredNorm();
    out.duality_gap = (primal - dual) / std::max(1.0, std::abs(primal));
    out.epochs = epoch;
    if (out.duality_gap <= tol) break;
  }
  out.bias = w(dim - 1);
  out.w = w.head(dim - 1);
  return out;
}

}  // namespace shapetraj
