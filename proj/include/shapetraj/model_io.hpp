#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "shapetraj/classify.hpp"
#include "shapetraj/dataset.hpp"
#include "shapetraj/error.hpp"

namespace shapetraj {

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kModelFormatName = "shapetraj-model";

namespace detail {

inline nlohmann::json matrix_to_json(const MatX& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatX matrix_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError(std::string("model: '") + what + "' is not a matrix");
  MatX m(Eigen::Index(j.size()), Eigen::Index(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != j[0].size())
      throw ParseError(std::string("model: ragged rows in '") + what + "'");
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(Eigen::Index(r), Eigen::Index(c)) = j[r][c].get<double>();
  }
  return m;
}

inline nlohmann::json vector_to_json(const VecX& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline VecX vector_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("model: '") + what + "' is not an array");
  VecX v(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(Eigen::Index(i)) = j[i].get<double>();
  return v;
}

inline nlohmann::json trajectory_to_json(const Trajectory& t) {
  nlohmann::json j;
  j["id"] = t.id;
  if (t.label) j["label"] = *t.label;
  auto points = nlohmann::json::array();
  for (const auto& p : t.points) {
    nlohmann::json jp;
    jp["basis"] = matrix_to_json(p.basis);
    jp["shape"] = matrix_to_json(p.shape);
    points.push_back(std::move(jp));
  }
  j["points"] = std::move(points);
  return j;
}

inline Trajectory trajectory_from_json(const nlohmann::json& j) {
  Trajectory t;
  t.id = j.at("id").get<std::string>();
  if (j.contains("label") && !j["label"].is_null())
    t.label = j["label"].get<std::string>();
  for (const auto& jp : j.at("points")) {
    PsdPoint p;
    MatX basis = matrix_from_json(jp.at("basis"), "basis");
    if (basis.cols() != 2) throw ParseError("model: reference basis is not n x 2");
    p.basis = basis;
    MatX shape = matrix_from_json(jp.at("shape"), "shape");
    if (shape.rows() != 2 || shape.cols() != 2)
      throw ParseError("model: reference shape is not 2 x 2");
    p.shape = shape;
    t.points.push_back(std::move(p));
  }
  if (t.points.empty()) throw ParseError("model: reference '" + t.id + "' has no points");
  return t;
}

inline nlohmann::json metric_to_json(const FrameMetric& m) {
  nlohmann::json j;
  j["name"] = m.name();
  j["k"] = m.k;
  j["epsilon"] = m.epsilon;
  return j;
}

inline FrameMetric metric_from_json(const nlohmann::json& j) {
  FrameMetric m;
  std::string name = j.at("name").get<std::string>();
  if (name == "flat") m.kind = FrameMetric::Kind::Flat;
  else if (name == "spd-reg") m.kind = FrameMetric::Kind::SpdReg;
  else if (name == "closeness") m.kind = FrameMetric::Kind::Closeness;
  else throw ParseError("model: unknown metric '" + name + "'");
  m.k = j.at("k").get<double>();
  m.epsilon = j.at("epsilon").get<double>();
  return m;
}

inline void common_model_json(nlohmann::json& j, const FrameMetric& metric,
                              bool use_dtw, bool use_resample, double resample_k,
                              double zeta1, double zeta2,
                              const std::vector<Trajectory>& refs,
                              const std::vector<std::string>& classes) {
  j["format"] = kModelFormatName;
  j["version"] = kModelFormatVersion;
  j["metric"] = metric_to_json(metric);
  j["use_dtw"] = use_dtw;
  j["resample"] = {{"enabled", use_resample},
                   {"k", resample_k},
                   {"zeta1", zeta1},
                   {"zeta2", zeta2}};
  j["classes"] = classes;
  auto refs_json = nlohmann::json::array();
  for (const auto& t : refs) refs_json.push_back(trajectory_to_json(t));
  j["refs"] = std::move(refs_json);
}

}  // namespace detail

/// Either classifier, as read back from an archive.
struct ModelArchive {
  ClassifierKind kind = ClassifierKind::PpfSvm;
  PpfSvmModel svm;
  KnnModel knn;
};

inline void save_model(const std::string& path, const PpfSvmModel& model) {
  nlohmann::json j;
  j["classifier"] = "ppfsvm";
  detail::common_model_json(j, model.metric, model.use_dtw, model.use_resample,
                            model.resample_k, model.zeta1, model.zeta2, model.refs,
                            model.classes);
  j["C"] = model.c;
  j["seed"] = model.seed;
  j["weights"] = detail::matrix_to_json(model.weights);
  j["biases"] = detail::vector_to_json(model.biases);
  j["feat_mean"] = detail::vector_to_json(model.feat_mean);
  j["feat_std"] = detail::vector_to_json(model.feat_std);
  j["final_gap"] = model.final_gap;
  detail::atomic_write(path, j.dump(1) + "\n");
}

inline void save_model(const std::string& path, const KnnModel& model) {
  nlohmann::json j;
  j["classifier"] = "knn";
  detail::common_model_json(j, model.metric, model.use_dtw, model.use_resample,
                            model.resample_k, model.zeta1, model.zeta2, model.refs,
                            model.classes);
  j["K"] = model.knn_k;
  detail::atomic_write(path, j.dump(1) + "\n");
}

inline ModelArchive load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model '" + path + "': " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kModelFormatName)
      throw ParseError("model '" + path + "': unrecognized format field");
    if (j.at("version").get<int>() != kModelFormatVersion)
      throw ParseError("model '" + path + "': unsupported version " +
                       std::to_string(j.at("version").get<int>()));

    ModelArchive out;
    FrameMetric metric = detail::metric_from_json(j.at("metric"));
    bool use_dtw = j.at("use_dtw").get<bool>();
    const auto& rs = j.at("resample");
    std::vector<Trajectory> refs;
    for (const auto& jt : j.at("refs"))
      refs.push_back(detail::trajectory_from_json(jt));
    std::vector<std::string> classes =
        j.at("classes").get<std::vector<std::string>>();

    std::string kind = j.at("classifier").get<std::string>();
    if (kind == "ppfsvm") {
      out.kind = ClassifierKind::PpfSvm;
      auto& m = out.svm;
      m.metric = metric;
      m.use_dtw = use_dtw;
      m.use_resample = rs.at("enabled").get<bool>();
      m.resample_k = rs.at("k").get<double>();
      m.zeta1 = rs.at("zeta1").get<double>();
      m.zeta2 = rs.at("zeta2").get<double>();
      m.refs = std::move(refs);
      m.classes = std::move(classes);
      m.c = j.at("C").get<double>();
      m.seed = j.at("seed").get<std::uint64_t>();
      m.weights = detail::matrix_from_json(j.at("weights"), "weights");
      m.biases = detail::vector_from_json(j.at("biases"), "biases");
      m.feat_mean = detail::vector_from_json(j.at("feat_mean"), "feat_mean");
      m.feat_std = detail::vector_from_json(j.at("feat_std"), "feat_std");
      m.final_gap = j.at("final_gap").get<double>();
      if (m.weights.rows() != Eigen::Index(m.classes.size()) ||
          m.weights.cols() != Eigen::Index(m.refs.size()))
        throw ParseError("model: weight matrix does not match classes x refs");
      if (m.classes.size() < 2) throw ParseError("model: fewer than 2 classes");
    } else if (kind == "knn") {
      out.kind = ClassifierKind::Knn;
      auto& m = out.knn;
      m.metric = metric;
      m.use_dtw = use_dtw;
      m.use_resample = rs.at("enabled").get<bool>();
      m.resample_k = rs.at("k").get<double>();
      m.zeta1 = rs.at("zeta1").get<double>();
      m.zeta2 = rs.at("zeta2").get<double>();
      m.refs = std::move(refs);
      m.classes = std::move(classes);
      m.knn_k = j.at("K").get<int>();
      if (m.knn_k < 1 || std::size_t(m.knn_k) > m.refs.size())
        throw ParseError("model: K outside [1, reference count]");
    } else {
      throw ParseError("model '" + path + "': unknown classifier '" + kind + "'");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model '" + path + "': " + e.what());
  }
}

}  // namespace shapetraj
