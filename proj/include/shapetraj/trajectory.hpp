#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapetraj/metric.hpp"

namespace shapetraj {

/// Time-ordered curve on S+(2,n): one PsdPoint per frame, at least two frames,
/// all sharing the same landmark count.
struct Trajectory {
  std::vector<PsdPoint> points;
  std::string id;
  std::optional<std::string> label;

  std::size_t size() const { return points.size(); }
  Eigen::Index landmark_count() const {
    return points.empty() ? 0 : points.front().count();
  }
};

/// Monotone DTW warping path over the point grid: visited cells from (0,0) to
/// (N1,N2), the accumulated ground cost, and the cost divided by path length.
struct AlignmentPath {
  std::vector<std::pair<int, int>> steps;
  double total_cost = 0.0;
  double normalized_cost = 0.0;
};

/// Builds a trajectory from raw (uncentered) frames. A frame that fails
/// centering or polar decomposition is reported with its index.
inline Trajectory build_trajectory(const std::vector<MatX2>& frames,
                                   std::string id = {},
                                   std::optional<std::string> label = {}) {
  if (frames.size() < 2)
    throw EmptySequence("build_trajectory: need at least 2 frames, got " +
                        std::to_string(frames.size()));
  Trajectory out;
  out.id = std::move(id);
  out.label = std::move(label);
  out.points.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].rows() != frames.front().rows())
      throw DimensionMismatch("build_trajectory: frame " + std::to_string(i) +
                              " has a different landmark count");
    try {
      out.points.push_back(polar_decompose(center_landmarks(frames[i])));
    } catch (const DegenerateConfiguration& e) {
      throw DegenerateFrame(i, "build_trajectory: frame " + std::to_string(i) +
                                   " is degenerate: " + e.what());
    }
  }
  return out;
}

namespace detail {

inline void require_same_count(const Trajectory& a, const Trajectory& b,
                               const char* what) {
  if (a.landmark_count() != b.landmark_count())
    throw DimensionMismatch(std::string(what) + ": landmark counts differ");
}

}  // namespace detail

/// Dynamic program over the |a| x |b| grid with steps {(1,0),(0,1),(1,1)}.
/// Ties are broken diagonal first, then vertical (advance in a), then
/// horizontal, so the result is deterministic.
inline AlignmentPath dtw_align(const Trajectory& a, const Trajectory& b,
                               const FrameMetric& metric) {
  detail::require_same_count(a, b, "dtw_align");
  const int n1 = int(a.size());
  const int n2 = int(b.size());
  MatX cost(n1, n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) cost(i, j) = metric(a.points[i], b.points[j]);

  MatX acc(n1, n2);
  acc(0, 0) = cost(0, 0);
  for (int i = 1; i < n1; ++i) acc(i, 0) = acc(i - 1, 0) + cost(i, 0);
  for (int j = 1; j < n2; ++j) acc(0, j) = acc(0, j - 1) + cost(0, j);
  for (int i = 1; i < n1; ++i)
    for (int j = 1; j < n2; ++j) {
      double best = acc(i - 1, j - 1);
      if (acc(i - 1, j) < best) best = acc(i - 1, j);
      if (acc(i, j - 1) < best) best = acc(i, j - 1);
      acc(i, j) = cost(i, j) + best;
    }

  AlignmentPath path;
  std::vector<std::pair<int, int>> reversed;
  int i = n1 - 1, j = n2 - 1;
  reversed.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      double diag = acc(i - 1, j - 1);
      double vert = acc(i - 1, j);
      double horiz = acc(i, j - 1);
      double best = std::min(diag, std::min(vert, horiz));
      if (diag <= best) {
        --i; --j;
      } else if (vert <= best) {
        --i;
      } else {
        --j;
      }
    }
    reversed.emplace_back(i, j);
  }
  path.steps.assign(reversed.rbegin(), reversed.rend());
  path.total_cost = acc(n1 - 1, n2 - 1);
  path.normalized_cost = path.total_cost / double(path.steps.size());
  return path;
}

inline AlignmentPath dtw_align(const Trajectory& a, const Trajectory& b, double k) {
  return dtw_align(a, b, FrameMetric::closeness_metric(k));
}

/// Rate-invariant (dis-)similarity: the path-length-normalized optimal
/// warping cost. Symmetric; zero for a trajectory against itself or any
/// frame-duplication of itself. Not a metric.
inline double dtw_distance(const Trajectory& a, const Trajectory& b,
                           const FrameMetric& metric) {
  return dtw_align(a, b, metric).normalized_cost;
}

inline double dtw_distance(const Trajectory& a, const Trajectory& b, double k) {
  return dtw_distance(a, b, FrameMetric::closeness_metric(k));
}

/// Consecutive frame-to-frame dissimilarities; length |a| - 1.
inline std::vector<double> frame_distance_profile(const Trajectory& a,
                                                  const FrameMetric& metric) {
  std::vector<double> profile;
  profile.reserve(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    profile.push_back(metric(a.points[i - 1], a.points[i]));
  return profile;
}

inline std::vector<double> frame_distance_profile(const Trajectory& a, double k) {
  return frame_distance_profile(a, FrameMetric::closeness_metric(k));
}

/// Adaptive re-sampling, one left-to-right pass. A frame closer than zeta1 to
/// the last kept frame is dropped; a gap above zeta2 is filled with the
/// minimal number of equally spaced pseudo-geodesic samples. The closeness
/// scales as t^2 along a pseudo-geodesic, so m inserted samples cut a gap d
/// to d/(m+1)^2 and the minimal count is ceil(sqrt(d/zeta2)) - 1. The first
/// and last frames are always kept.
inline Trajectory resample(const Trajectory& a, double zeta1, double zeta2,
                           double k) {
  if (!(zeta1 >= 0.0) || !(zeta1 < zeta2))
    throw InvalidParameter("resample: need 0 <= zeta1 < zeta2, got zeta1=" +
                           std::to_string(zeta1) + " zeta2=" + std::to_string(zeta2));
  if (a.size() < 2)
    throw EmptySequence("resample: trajectory has fewer than 2 frames");
  Trajectory out;
  out.id = a.id;
  out.label = a.label;
  out.points.push_back(a.points.front());
  for (std::size_t i = 1; i < a.size(); ++i) {
    const PsdPoint& next = a.points[i];
    const bool last = (i + 1 == a.size());
    double d = closeness(out.points.back(), next, k);
    if (d < zeta1 && !last) continue;
    if (d > zeta2) {
      // small slack so d/zeta2 hitting an exact square is not rounded up
      int m = int(std::ceil(std::sqrt(d / zeta2) - 1e-12)) - 1;
      const PsdPoint from = out.points.back();
      for (int s = 1; s <= m; ++s)
        out.points.push_back(pseudo_geodesic(from, next, double(s) / double(m + 1)));
    }
    out.points.push_back(next);
  }
  return out;
}

/// Lockstep baseline used by the no-DTW ablation: both trajectories are
/// re-indexed to a common length by sampling the piecewise pseudo-geodesic
/// curve uniformly in the index parameter, then compared frame by frame.
inline double lockstep_distance(const Trajectory& a, const Trajectory& b,
                                const FrameMetric& metric) {
  detail::require_same_count(a, b, "lockstep_distance");
  const std::size_t len = std::max(a.size(), b.size());
  auto sample = [len](const Trajectory& t, std::size_t i) -> PsdPoint {
    double pos = double(i) * double(t.size() - 1) / double(len - 1);
    std::size_t lo = std::size_t(pos);
    if (lo >= t.size() - 1) return t.points.back();
    double frac = pos - double(lo);
    if (frac == 0.0) return t.points[lo];
    return pseudo_geodesic(t.points[lo], t.points[lo + 1], frac);
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) sum += metric(sample(a, i), sample(b, i));
  return sum / double(len);
}

}  // namespace shapetraj
