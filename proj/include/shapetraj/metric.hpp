#pragma once

#include <string>

#include "shapetraj/baselines.hpp"
#include "shapetraj/closeness.hpp"

namespace shapetraj {

/// Frame-level dissimilarity plugged into DTW and classification. Closeness
/// is the default; flat and spd-reg are the baseline variants.
struct FrameMetric {
  enum class Kind { Closeness, Flat, SpdReg };

  Kind kind = Kind::Closeness;
  double k = 0.01;        // closeness weight
  double epsilon = 0.0;   // spd-reg; <= 0 resolves per pair from the traces

  double operator()(const PsdPoint& a, const PsdPoint& b) const {
    switch (kind) {
      case Kind::Flat:
        return flat_distance(a, b);
      case Kind::SpdReg: {
        double eps = epsilon > 0.0 ? epsilon : default_regularization(a, b);
        return regularized_spd_distance(a, b, eps);
      }
      case Kind::Closeness:
      default:
        return closeness(a, b, k);
    }
  }

  static FrameMetric closeness_metric(double k) { return {Kind::Closeness, k, 0.0}; }
  static FrameMetric flat_metric() { return {Kind::Flat, 0.0, 0.0}; }
  static FrameMetric spd_reg_metric(double eps) { return {Kind::SpdReg, 0.0, eps}; }

  std::string name() const {
    switch (kind) {
      case Kind::Flat: return "flat";
      case Kind::SpdReg: return "spd-reg";
      case Kind::Closeness: default: return "closeness";
    }
  }
};

}  // namespace shapetraj
