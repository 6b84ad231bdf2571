#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shapetraj/error.hpp"
#include "shapetraj/linalg.hpp"
#include "shapetraj/linear_svm.hpp"
#include "shapetraj/metric.hpp"
#include "shapetraj/parallel.hpp"
#include "shapetraj/report.hpp"
#include "shapetraj/rng.hpp"
#include "shapetraj/trajectory.hpp"

namespace shapetraj {

/// Sequence-level dissimilarity: d_DTW by default, frame-index lockstep when
/// the warping stage is ablated.
struct TrajectoryDistance {
  FrameMetric metric = FrameMetric::closeness_metric(0.01);
  bool use_dtw = true;

  double operator()(const Trajectory& a, const Trajectory& b) const {
    return use_dtw ? dtw_distance(a, b, metric) : lockstep_distance(a, b, metric);
  }
};

/// Proximity function between trajectories: the normalized DTW cost.
inline double proximity(const Trajectory& a, const Trajectory& b, double k) {
  return dtw_distance(a, b, k);
}

struct ProximityMatrix {
  MatX values;                   // m x m, symmetric, zero diagonal
  std::vector<std::string> ids;  // row order = input order
};

/// All pairwise proximities. Only the upper triangle is computed and then
/// mirrored; pair slots are preassigned so the result does not depend on the
/// thread count.
inline ProximityMatrix proximity_matrix(const std::vector<Trajectory>& set,
                                        const TrajectoryDistance& dist,
                                        int threads = 1) {
  const std::size_t m = set.size();
  if (m < 2) throw InvalidInput("proximity_matrix: need at least 2 trajectories");
  for (std::size_t i = 1; i < m; ++i)
    detail::require_same_count(set[0], set[i], "proximity_matrix");

  ProximityMatrix out;
  out.values = MatX::Zero(Eigen::Index(m), Eigen::Index(m));
  out.ids.reserve(m);
  for (const auto& t : set) out.ids.push_back(t.id);

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(int(i), int(j));
  std::vector<double> vals(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    vals[p] = dist(set[std::size_t(pairs[p].first)], set[std::size_t(pairs[p].second)]);
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    out.values(pairs[p].first, pairs[p].second) = vals[p];
    out.values(pairs[p].second, pairs[p].first) = vals[p];
  }
  return out;
}

inline ProximityMatrix proximity_matrix(const std::vector<Trajectory>& set,
                                        double k, int threads = 1) {
  return proximity_matrix(set, TrajectoryDistance{FrameMetric::closeness_metric(k), true},
                          threads);
}

/// Proximity embedding: component i is the dissimilarity to reference i.
inline VecX embed(const Trajectory& x, const std::vector<Trajectory>& refs,
                  const TrajectoryDistance& dist) {
  if (refs.empty()) throw InvalidInput("embed: empty reference set");
  VecX phi(Eigen::Index(refs.size()));
  for (std::size_t i = 0; i < refs.size(); ++i) {
    detail::require_same_count(x, refs[i], "embed");
    phi(Eigen::Index(i)) = dist(x, refs[i]);
  }
  return phi;
}

inline VecX embed(const Trajectory& x, const std::vector<Trajectory>& refs, double k) {
  return embed(x, refs, TrajectoryDistance{FrameMetric::closeness_metric(k), true});
}

/// Row r = embed(xs[r], refs, dist). Entries are computed into preassigned
/// slots, so the matrix is identical for any thread count.
inline MatX embed_set(const std::vector<Trajectory>& xs,
                      const std::vector<Trajectory>& refs,
                      const TrajectoryDistance& dist, int threads = 1) {
  if (refs.empty()) throw InvalidInput("embed_set: empty reference set");
  for (const auto& x : xs) detail::require_same_count(x, refs[0], "embed_set");
  for (const auto& r : refs) detail::require_same_count(r, refs[0], "embed_set");
  MatX out(Eigen::Index(xs.size()), Eigen::Index(refs.size()));
  parallel_for(xs.size() * refs.size(), threads, [&](std::size_t p) {
    std::size_t r = p / refs.size();
    std::size_t c = p % refs.size();
    out(Eigen::Index(r), Eigen::Index(c)) = dist(xs[r], refs[c]);
  });
  return out;
}

namespace detail {

inline std::vector<std::string> sorted_classes(const std::vector<Trajectory>& set,
                                               const char* where) {
  std::set<std::string> seen;
  for (const auto& t : set) {
    if (!t.label)
      throw InvalidInput(std::string(where) + ": trajectory '" + t.id + "' has no label");
    seen.insert(*t.label);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace detail

/// One-vs-rest linear SVM over standardized proximity features. The model
/// must carry the training trajectories: every embedding at test time is a
/// vector of dissimilarities to them.
struct PpfSvmModel {
  int format_version = 1;
  FrameMetric metric;              // frame-level dissimilarity for d_DTW
  bool use_dtw = true;
  bool use_resample = false;
  double resample_k = 0.01;        // closeness weight driving zeta decisions
  double zeta1 = 0.0;              // resolved thresholds (0, 0 when off)
  double zeta2 = 0.0;
  double c = 1.0;
  std::uint64_t seed = 0;
  std::vector<Trajectory> refs;    // training trajectories, post-resampling
  std::vector<std::string> classes;  // sorted, unique
  MatX weights;                    // classes x m
  VecX biases;                     // per class
  VecX feat_mean;                  // standardization of the embedding
  VecX feat_std;
  double final_gap = 0.0;          // worst residual duality gap across classes

  TrajectoryDistance distance() const { return {metric, use_dtw}; }

  Trajectory preprocess(const Trajectory& x) const {
    if (!use_resample || x.size() < 2) return x;
    return resample(x, zeta1, zeta2, resample_k);
  }
};

/// Trains the one-vs-rest model on an already preprocessed labeled set.
/// Features are the rows of the proximity matrix, standardized with the
/// training statistics that the model keeps for test time.
inline PpfSvmModel train_ppfsvm(const std::vector<Trajectory>& train,
                                const TrajectoryDistance& dist, double c,
                                std::uint64_t seed, int threads = 1) {
  if (train.size() < 2)
    throw InvalidInput("train_ppfsvm: need at least 2 trajectories");
  if (!(c > 0.0))
    throw InvalidParameter("train_ppfsvm: C must be positive, got " + std::to_string(c));
  auto classes = detail::sorted_classes(train, "train_ppfsvm");
  if (classes.size() < 2)
    throw InsufficientClasses("train_ppfsvm: need at least 2 classes, got " +
                              std::to_string(classes.size()));

  PpfSvmModel model;
  model.metric = dist.metric;
  model.use_dtw = dist.use_dtw;
  model.c = c;
  model.seed = seed;
  model.refs = train;
  model.classes = classes;

  const Eigen::Index m = Eigen::Index(train.size());
  MatX feats = proximity_matrix(train, dist, threads).values;
  model.feat_mean = feats.colwise().mean();
  MatX centered = feats.rowwise() - model.feat_mean.transpose();
  model.feat_std = (centered.array().square().colwise().mean()).sqrt();
  for (Eigen::Index j = 0; j < m; ++j)
    if (model.feat_std(j) < 1e-12) model.feat_std(j) = 1.0;
  MatX x = centered.array().rowwise() / model.feat_std.transpose().array();

  model.weights = MatX::Zero(Eigen::Index(classes.size()), m);
  model.biases = VecX::Zero(Eigen::Index(classes.size()));
  model.final_gap = 0.0;
  std::vector<int> y(train.size());
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    for (std::size_t i = 0; i < train.size(); ++i)
      y[i] = (*train[i].label == classes[ci]) ? 1 : -1;
    // every class solve reuses the same seed: the subproblem for a class then
    // depends only on its member set, never on where the class name sorts
    auto res = train_linear_svm_hinge(x, y, c, seed);
    model.weights.row(Eigen::Index(ci)) = res.w.transpose();
    model.biases(Eigen::Index(ci)) = res.bias;
    model.final_gap = std::max(model.final_gap, res.duality_gap);
  }
  return model;
}

inline PpfSvmModel train_ppfsvm(const std::vector<Trajectory>& train, double k,
                                double c, std::uint64_t seed, int threads = 1) {
  return train_ppfsvm(train, TrajectoryDistance{FrameMetric::closeness_metric(k), true},
                      c, seed, threads);
}

struct Prediction {
  std::string label;
  VecX scores;  // one per class, in model class order
};

/// Per-class decision values for an already preprocessed trajectory.
inline VecX decision_scores(const PpfSvmModel& model, const Trajectory& x) {
  VecX phi = embed(x, model.refs, model.distance());
  VecX tilde = (phi - model.feat_mean).cwiseQuotient(model.feat_std);
  return model.weights * tilde + model.biases;
}

/// Argmax of the one-vs-rest scores; exact ties go to the earliest class.
inline Prediction predict(const PpfSvmModel& model, const Trajectory& x) {
  Prediction out;
  out.scores = decision_scores(model, model.preprocess(x));
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < out.scores.size(); ++i)
    if (out.scores(i) > out.scores(best)) best = i;
  out.label = model.classes[std::size_t(best)];
  return out;
}

/// Majority vote over the K nearest training trajectories. Distance ties are
/// broken by training order; vote ties go to the tied class with the
/// smallest mean distance, then to class-name order.
inline std::string knn_predict(const std::vector<Trajectory>& train,
                               const Trajectory& x, int neighbors,
                               const TrajectoryDistance& dist) {
  if (neighbors < 1 || std::size_t(neighbors) > train.size())
    throw InvalidParameter("knn_predict: K must be in [1, " +
                           std::to_string(train.size()) + "], got " +
                           std::to_string(neighbors));
  for (const auto& t : train)
    if (!t.label)
      throw InvalidInput("knn_predict: trajectory '" + t.id + "' has no label");

  std::vector<double> d(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) d[i] = dist(x, train[i]);
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  std::map<std::string, std::pair<int, double>> votes;  // class -> (count, dist sum)
  for (int i = 0; i < neighbors; ++i) {
    auto& [count, sum] = votes[*train[order[std::size_t(i)]].label];
    count += 1;
    sum += d[order[std::size_t(i)]];
  }
  const std::string* best = nullptr;
  int best_count = -1;
  double best_mean = 0.0;
  for (const auto& [name, stat] : votes) {  // map order = class-name order
    double mean = stat.second / double(stat.first);
    if (stat.first > best_count ||
        (stat.first == best_count && mean < best_mean)) {
      best = &name;
      best_count = stat.first;
      best_mean = mean;
    }
  }
  return *best;
}

inline std::string knn_predict(const std::vector<Trajectory>& train,
                               const Trajectory& x, int neighbors, double k) {
  return knn_predict(train, x, neighbors,
                     TrajectoryDistance{FrameMetric::closeness_metric(k), true});
}

/// Training-set bundle for the k-NN baseline, archived and consulted the
/// same way as the SVM model.
struct KnnModel {
  int format_version = 1;
  FrameMetric metric;
  bool use_dtw = true;
  bool use_resample = false;
  double resample_k = 0.01;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  int knn_k = 1;
  std::vector<Trajectory> refs;
  std::vector<std::string> classes;

  TrajectoryDistance distance() const { return {metric, use_dtw}; }

  Trajectory preprocess(const Trajectory& x) const {
    if (!use_resample || x.size() < 2) return x;
    return resample(x, zeta1, zeta2, resample_k);
  }
};

inline std::string predict(const KnnModel& model, const Trajectory& x) {
  return knn_predict(model.refs, model.preprocess(x), model.knn_k, model.distance());
}

enum class ClassifierKind { PpfSvm, Knn };

/// Knob set shared by training, evaluation, and the command-line surface.
struct PipelineConfig {
  double k = 0.01;                   // closeness weight
  FrameMetric::Kind metric_kind = FrameMetric::Kind::Closeness;
  double epsilon = 0.0;              // spd-reg only; <= 0 resolves per pair
  bool use_dtw = true;
  bool use_resample = true;
  bool auto_zeta = true;             // thresholds from the training split
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  ClassifierKind classifier = ClassifierKind::PpfSvm;
  int knn_k = 1;
  double c = 1.0;
  bool auto_c = false;               // inner 3-fold grid search
  int threads = 1;

  FrameMetric frame_metric() const {
    switch (metric_kind) {
      case FrameMetric::Kind::Flat: return FrameMetric::flat_metric();
      case FrameMetric::Kind::SpdReg: return FrameMetric::spd_reg_metric(epsilon);
      default: return FrameMetric::closeness_metric(k);
    }
  }
  TrajectoryDistance distance() const { return {frame_metric(), use_dtw}; }
};

inline constexpr double kAutoCGrid[] = {0.01, 0.1, 1.0, 10.0, 100.0};

namespace detail {

/// Median of consecutive closenesses pooled over the split; zeta1 = mu / 20
/// keeps only meaningful motion, zeta2 = 2 mu caps gaps near typical motion.
/// A zero median (frozen split) disables resampling.
inline std::pair<double, double> auto_zeta_thresholds(
    const std::vector<Trajectory>& split, double k) {
  std::vector<double> gaps;
  for (const auto& t : split) {
    auto profile = frame_distance_profile(t, k);
    gaps.insert(gaps.end(), profile.begin(), profile.end());
  }
  if (gaps.empty()) return {0.0, 0.0};
  std::sort(gaps.begin(), gaps.end());
  std::size_t n = gaps.size();
  double median = (n % 2 == 1) ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
  if (!(median > 0.0)) return {0.0, 0.0};
  return {0.05 * median, 2.0 * median};
}

/// Resolved (zeta1, zeta2) for a training split; (0, 0) means disabled.
inline std::pair<double, double> resolve_zetas(const PipelineConfig& cfg,
                                               const std::vector<Trajectory>& split) {
  if (!cfg.use_resample) return {0.0, 0.0};
  if (!cfg.auto_zeta) {
    if (!(cfg.zeta1 >= 0.0) || !(cfg.zeta1 < cfg.zeta2))
      throw InvalidParameter("resample thresholds: need 0 <= zeta1 < zeta2");
    return {cfg.zeta1, cfg.zeta2};
  }
  return auto_zeta_thresholds(split, cfg.k);
}

inline std::vector<Trajectory> apply_resample(const std::vector<Trajectory>& set,
                                              double zeta1, double zeta2, double k) {
  if (zeta2 <= 0.0) return set;
  std::vector<Trajectory> out;
  out.reserve(set.size());
  for (const auto& t : set) out.push_back(resample(t, zeta1, zeta2, k));
  return out;
}

/// Stratified fold ids: per-class shuffles dealt round-robin through a
/// cursor that runs on across classes, so fold sizes differ by at most one
/// even when folds exceed a class count.
inline std::vector<int> stratified_folds(const std::vector<Trajectory>& data,
                                         const std::vector<std::string>& classes,
                                         int folds, std::uint64_t seed) {
  std::vector<int> fold_of(data.size(), -1);
  std::size_t cursor = 0;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (*data[i].label == classes[ci]) members.push_back(i);
    Rng rng(derive_seed(seed, 1000 + ci));
    rng.shuffle(members);
    for (std::size_t idx : members) fold_of[idx] = int(cursor++ % std::size_t(folds));
  }
  return fold_of;
}

}  // namespace detail

struct CrossValidationResult {
  ClassificationReport report;
  std::vector<std::string> predictions;  // aligned with the input order
  std::vector<int> fold_of;
  std::vector<double> fold_zeta1, fold_zeta2;  // resolved per fold
  std::vector<double> fold_c;                  // chosen per fold
};

inline PpfSvmModel train_pipeline_svm(const std::vector<Trajectory>& train,
                                      const PipelineConfig& cfg, double c,
                                      std::uint64_t seed, double zeta1, double zeta2) {
  auto prepared = detail::apply_resample(train, zeta1, zeta2, cfg.k);
  PpfSvmModel model = train_ppfsvm(prepared, cfg.distance(), c, seed, cfg.threads);
  model.use_resample = zeta2 > 0.0;
  model.resample_k = cfg.k;
  model.zeta1 = zeta1;
  model.zeta2 = zeta2;
  return model;
}

inline KnnModel train_pipeline_knn(const std::vector<Trajectory>& train,
                                   const PipelineConfig& cfg, double zeta1,
                                   double zeta2) {
  if (cfg.knn_k < 1 || std::size_t(cfg.knn_k) > train.size())
    throw InvalidParameter("knn: K must be in [1, " + std::to_string(train.size()) +
                           "], got " + std::to_string(cfg.knn_k));
  KnnModel model;
  model.metric = cfg.frame_metric();
  model.use_dtw = cfg.use_dtw;
  model.use_resample = zeta2 > 0.0;
  model.resample_k = cfg.k;
  model.zeta1 = zeta1;
  model.zeta2 = zeta2;
  model.knn_k = cfg.knn_k;
  model.refs = detail::apply_resample(train, zeta1, zeta2, cfg.k);
  model.classes = detail::sorted_classes(train, "knn");
  return model;
}

namespace detail {

/// Accuracy of one train/test split under the configured classifier; the
/// zetas are resolved by the caller from its own training split.
inline double split_accuracy(const std::vector<Trajectory>& train,
                             const std::vector<Trajectory>& test,
                             const PipelineConfig& cfg, double c,
                             std::uint64_t seed, double zeta1, double zeta2) {
  auto train_p = apply_resample(train, zeta1, zeta2, cfg.k);
  auto test_p = apply_resample(test, zeta1, zeta2, cfg.k);
  std::size_t correct = 0;
  if (cfg.classifier == ClassifierKind::PpfSvm) {
    PpfSvmModel model = train_ppfsvm(train_p, cfg.distance(), c, seed, cfg.threads);
    MatX phi = embed_set(test_p, model.refs, model.distance(), cfg.threads);
    for (std::size_t i = 0; i < test_p.size(); ++i) {
      VecX tilde = (phi.row(Eigen::Index(i)).transpose() - model.feat_mean)
                       .cwiseQuotient(model.feat_std);
      VecX scores = model.weights * tilde + model.biases;
      Eigen::Index best = 0;
      for (Eigen::Index s = 1; s < scores.size(); ++s)
        if (scores(s) > scores(best)) best = s;
      if (model.classes[std::size_t(best)] == *test_p[i].label) ++correct;
    }
  } else {
    auto dist = cfg.distance();
    if (cfg.knn_k < 1 || std::size_t(cfg.knn_k) > train_p.size())
      throw InvalidParameter("knn: K must be in [1, " +
                             std::to_string(train_p.size()) + "], got " +
                             std::to_string(cfg.knn_k));
    for (const auto& t : test_p)
      detail::require_same_count(t, train_p[0], "knn");
    std::vector<int> ok(test_p.size(), 0);
    parallel_for(test_p.size(), cfg.threads, [&](std::size_t i) {
      ok[i] = knn_predict(train_p, test_p[i], cfg.knn_k, dist) == *test_p[i].label;
    });
    for (int v : ok) correct += std::size_t(v);
  }
  return test.empty() ? 0.0 : double(correct) / double(test.size());
}

/// Inner grid search for C on the training split only. Falls back to the
/// configured C when the split cannot stratify two inner folds.
inline double choose_c(const std::vector<Trajectory>& train,
                       const PipelineConfig& cfg, std::uint64_t seed) {
  auto classes = sorted_classes(train, "choose_c");
  std::size_t min_class = train.size();
  for (const auto& c : classes) {
    std::size_t n = 0;
    for (const auto& t : train)
      if (*t.label == c) ++n;
    min_class = std::min(min_class, n);
  }
  int inner = int(std::min<std::size_t>(3, min_class));
  if (inner < 2 || classes.size() < 2) return cfg.c;

  auto fold_of = stratified_folds(train, classes, inner, derive_seed(seed, 7919));
  double best_c = kAutoCGrid[0];
  double best_acc = -1.0;
  for (double c : kAutoCGrid) {
    double acc = 0.0;
    for (int f = 0; f < inner; ++f) {
      std::vector<Trajectory> tr, te;
      for (std::size_t i = 0; i < train.size(); ++i)
        (fold_of[i] == f ? te : tr).push_back(train[i]);
      auto [z1, z2] = resolve_zetas(cfg, tr);
      acc += split_accuracy(tr, te, cfg, c, derive_seed(seed, 7933 + unsigned(f)),
                            z1, z2);
    }
    acc /= double(inner);
    if (acc > best_acc) {  // strict: ties keep the smaller C from the grid
      best_acc = acc;
      best_c = c;
    }
  }
  return best_c;
}

}  // namespace detail

/// Stratified k-fold cross-validation of the configured pipeline. Fold
/// assignment, threshold resolution, and training are all derived from the
/// seed, so the report is reproducible bit for bit.
inline CrossValidationResult cross_validate(const std::vector<Trajectory>& data,
                                            int folds, const PipelineConfig& cfg,
                                            std::uint64_t seed) {
  if (folds < 2)
    throw InvalidParameter("cross_validate: folds must be >= 2, got " +
                           std::to_string(folds));
  if (std::size_t(folds) > data.size())
    throw InvalidParameter("cross_validate: folds exceed the sample count");
  auto classes = detail::sorted_classes(data, "cross_validate");
  if (classes.size() < 2)
    throw InsufficientClasses("cross_validate: need at least 2 classes");

  CrossValidationResult out;
  out.fold_of = detail::stratified_folds(data, classes, folds, seed);
  out.predictions.assign(data.size(), "");

  for (int f = 0; f < folds; ++f) {
    std::vector<Trajectory> train, test;
    std::vector<std::size_t> test_idx;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (out.fold_of[i] == f) {
        test.push_back(data[i]);
        test_idx.push_back(i);
      } else {
        train.push_back(data[i]);
      }
    }
    auto [zeta1, zeta2] = detail::resolve_zetas(cfg, train);
    out.fold_zeta1.push_back(zeta1);
    out.fold_zeta2.push_back(zeta2);
    std::uint64_t fold_seed = derive_seed(seed, 100 + unsigned(f));

    auto train_p = detail::apply_resample(train, zeta1, zeta2, cfg.k);
    auto test_p = detail::apply_resample(test, zeta1, zeta2, cfg.k);

    if (cfg.classifier == ClassifierKind::PpfSvm) {
      double c = cfg.auto_c ? detail::choose_c(train, cfg, fold_seed) : cfg.c;
      out.fold_c.push_back(c);
      PpfSvmModel model = train_ppfsvm(train_p, cfg.distance(), c, fold_seed,
                                       cfg.threads);
      MatX phi = embed_set(test_p, model.refs, model.distance(), cfg.threads);
      for (std::size_t i = 0; i < test_p.size(); ++i) {
        VecX tilde = (phi.row(Eigen::Index(i)).transpose() - model.feat_mean)
                         .cwiseQuotient(model.feat_std);
        VecX scores = model.weights * tilde + model.biases;
        Eigen::Index best = 0;
        for (Eigen::Index s = 1; s < scores.size(); ++s)
          if (scores(s) > scores(best)) best = s;
        out.predictions[test_idx[i]] = model.classes[std::size_t(best)];
      }
    } else {
      out.fold_c.push_back(0.0);
      auto dist = cfg.distance();
      if (cfg.knn_k < 1 || std::size_t(cfg.knn_k) > train_p.size())
        throw InvalidParameter("knn: K must be in [1, " +
                               std::to_string(train_p.size()) + "], got " +
                               std::to_string(cfg.knn_k));
      for (const auto& t : test_p)
        detail::require_same_count(t, train_p[0], "knn");
      std::vector<std::string> preds(test_p.size());
      parallel_for(test_p.size(), cfg.threads, [&](std::size_t i) {
        preds[i] = knn_predict(train_p, test_p[i], cfg.knn_k, dist);
      });
      for (std::size_t i = 0; i < test_p.size(); ++i)
        out.predictions[test_idx[i]] = preds[i];
    }
  }

  std::vector<std::string> truths;
  truths.reserve(data.size());
  for (const auto& t : data) truths.push_back(*t.label);
  out.report = confusion_and_metrics(out.predictions, truths, classes, &out.fold_of);
  return out;
}

}  // namespace shapetraj
