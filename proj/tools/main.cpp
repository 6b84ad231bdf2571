// Command-line surface for the shape-trajectory library: distances,
// alignment, re-sampling, training, prediction, evaluation, synthesis,
// benchmarking, and format conversion over .seq.jsonl landmark files.
//
// Exit codes: 0 success, 2 usage, 3 data validation, 4 numeric failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapetraj/shapetraj.hpp"

namespace st = shapetraj;
using nlohmann::json;

namespace {

struct Options {
  double k = 0.01;
  double zeta1 = -1.0;  // < 0 means not given
  double zeta2 = -1.0;
  bool auto_zeta = false;
  bool no_resample = false;
  bool no_dtw = false;
  std::string distance = "closeness";
  double epsilon = 0.0;
  std::string classifier = "ppfsvm";
  int knn_k = 1;
  std::string c_value = "1";
  int folds = 5;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "text";

  bool machine() const { return format == "machine"; }

  st::FrameMetric metric() const {
    if (distance == "flat") return st::FrameMetric::flat_metric();
    if (distance == "spd-reg") return st::FrameMetric::spd_reg_metric(epsilon);
    return st::FrameMetric::closeness_metric(k);
  }

  st::PipelineConfig pipeline() const {
    st::PipelineConfig cfg;
    cfg.k = k;
    cfg.metric_kind = metric().kind;
    cfg.epsilon = epsilon;
    cfg.use_dtw = !no_dtw;
    cfg.use_resample = !no_resample;
    if (zeta1 >= 0.0 || zeta2 >= 0.0) {
      if (zeta1 < 0.0 || zeta2 < 0.0)
        throw st::InvalidParameter("--zeta1 and --zeta2 must be given together");
      cfg.auto_zeta = false;
      cfg.zeta1 = zeta1;
      cfg.zeta2 = zeta2;
    } else {
      cfg.auto_zeta = true;
    }
    if (auto_zeta) cfg.auto_zeta = true;
    cfg.classifier = classifier == "knn" ? st::ClassifierKind::Knn
                                         : st::ClassifierKind::PpfSvm;
    cfg.knn_k = knn_k;
    if (c_value == "auto") {
      cfg.auto_c = true;
    } else {
      try {
        std::size_t used = 0;
        cfg.c = std::stod(c_value, &used);
        if (used != c_value.size()) throw std::invalid_argument(c_value);
      } catch (const std::exception&) {
        throw st::InvalidParameter("--C expects a number or 'auto', got '" + c_value + "'");
      }
      if (!(cfg.c > 0.0)) throw st::InvalidParameter("--C must be positive");
    }
    cfg.threads = threads;
    return cfg;
  }
};

void warn_issues(const std::vector<std::string>& issues) {
  for (const auto& s : issues) std::cerr << "warning: " << s << "\n";
}

/// `path` or `path#record-id`.
st::SequenceRecord pick_record(const std::string& spec) {
  std::string path = spec;
  std::optional<std::string> id;
  if (auto pos = spec.rfind('#'); pos != std::string::npos) {
    path = spec.substr(0, pos);
    id = spec.substr(pos + 1);
  }
  auto loaded = st::load_sequences(path);
  warn_issues(loaded.issues);
  if (loaded.records.empty())
    throw st::InvalidInput("no usable records in '" + path + "'");
  if (!id) return loaded.records.front();
  for (auto& r : loaded.records)
    if (r.id == *id) return r;
  throw st::InvalidInput("record '" + *id + "' not found in '" + path + "'");
}

std::vector<st::Trajectory> load_trajectories(const std::string& path) {
  auto loaded = st::load_sequences(path);
  warn_issues(loaded.issues);
  if (loaded.records.empty())
    throw st::InvalidInput("no usable records in '" + path + "'");
  return st::to_trajectories(loaded.records);
}

/// Nine significant digits; an exact zero prints as 0.000000000 and small
/// magnitudes switch to scientific so the digits stay significant.
std::string format_distance(double v) {
  char buf[64];
  if (v == 0.0) return "0.000000000";
  if (std::abs(v) < 1e-3)
    std::snprintf(buf, sizeof(buf), "%.9e", v);
  else
    std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int run_dist(const Options& opts, const std::string& in1, const std::string& in2) {
  auto a = pick_record(in1);
  auto b = pick_record(in2);
  auto metric = opts.metric();
  double value = 0.0;
  std::string mode;
  if (a.frames.size() == 1 && b.frames.size() == 1) {
    mode = "frame";
    auto pa = st::polar_decompose(st::center_landmarks(a.frames[0]));
    auto pb = st::polar_decompose(st::center_landmarks(b.frames[0]));
    value = metric(pa, pb);
  } else if (a.frames.size() >= 2 && b.frames.size() >= 2) {
    mode = "dtw";
    value = st::dtw_distance(st::to_trajectory(a), st::to_trajectory(b), metric);
  } else {
    throw st::InvalidInput("dist: inputs must both be single frames or both be sequences");
  }
  if (opts.machine()) {
    json j{{"a", a.id},     {"b", b.id},        {"metric", metric.name()},
           {"k", metric.k}, {"mode", mode},     {"value", value}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << format_distance(value) << "\n";
  }
  return 0;
}

int run_align(const Options& opts, const std::string& in1, const std::string& in2) {
  auto a = st::to_trajectory(pick_record(in1));
  auto b = st::to_trajectory(pick_record(in2));
  auto path = st::dtw_align(a, b, opts.metric());
  if (opts.machine()) {
    auto steps = json::array();
    for (auto [i, j] : path.steps) steps.push_back(json::array({i, j}));
    json j{{"a", a.id},
           {"b", b.id},
           {"total_cost", path.total_cost},
           {"normalized_cost", path.normalized_cost},
           {"steps", std::move(steps)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "pairs: " << path.steps.size() << "\n";
    std::cout << "total_cost: " << format_distance(path.total_cost) << "\n";
    std::cout << "normalized_cost: " << format_distance(path.normalized_cost) << "\n";
    std::cout << "path:\n";
    for (auto [i, j] : path.steps) std::cout << i << " " << j << "\n";
  }
  return 0;
}

int run_resample(const Options& opts, const std::string& input,
                 const std::string& output) {
  auto loaded = st::load_sequences(input);
  warn_issues(loaded.issues);

  std::vector<st::Trajectory> trajs;
  std::vector<std::string> issues;
  for (const auto& rec : loaded.records) {
    try {
      trajs.push_back(st::to_trajectory(rec));
    } catch (const st::Error& e) {
      issues.push_back(std::string("record '") + rec.id + "': " + e.what());
    }
  }
  warn_issues(issues);
  if (trajs.empty()) throw st::InvalidInput("resample: no usable records");

  double zeta1 = opts.zeta1, zeta2 = opts.zeta2;
  if (opts.auto_zeta || zeta1 < 0.0 || zeta2 < 0.0) {
    if (!opts.auto_zeta && (zeta1 >= 0.0 || zeta2 >= 0.0))
      throw st::InvalidParameter("--zeta1 and --zeta2 must be given together");
    std::tie(zeta1, zeta2) = st::detail::auto_zeta_thresholds(trajs, opts.k);
  }

  std::vector<st::SequenceRecord> out;
  std::size_t frames_in = 0, frames_out = 0;
  for (const auto& t : trajs) {
    frames_in += t.size();
    st::Trajectory r = zeta2 > 0.0 ? st::resample(t, zeta1, zeta2, opts.k) : t;
    frames_out += r.size();
    out.push_back(st::to_record(r));
  }
  st::save_sequences(output, out);

  if (opts.machine()) {
    json j{{"zeta1", zeta1},         {"zeta2", zeta2},
           {"records", out.size()},  {"frames_in", frames_in},
           {"frames_out", frames_out}, {"output", output}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "zeta1: " << fmt_g(zeta1) << "\nzeta2: " << fmt_g(zeta2) << "\n";
    std::cout << "records: " << out.size() << "\nframes: " << frames_in << " -> "
              << frames_out << "\n";
    std::cout << "wrote " << output << "\n";
  }
  return 0;
}

int run_synth(const st::SynthSpec& spec, const Options& opts,
              const std::string& output) {
  auto records = st::synth_generate(spec);
  st::save_sequences(output, records);
  if (opts.machine()) {
    json j{{"records", records.size()},
           {"classes", spec.classes},
           {"per_class", spec.sequences_per_class},
           {"landmarks", spec.landmarks},
           {"seed", spec.seed},
           {"output", output}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "wrote " << records.size() << " records (" << spec.classes
              << " classes x " << spec.sequences_per_class << ") to " << output
              << "\n";
  }
  return 0;
}

json pipeline_echo(const st::PipelineConfig& cfg, int folds, std::uint64_t seed) {
  json j;
  j["classifier"] = cfg.classifier == st::ClassifierKind::Knn ? "knn" : "ppfsvm";
  j["metric"] = cfg.frame_metric().name();
  j["k"] = cfg.k;
  if (cfg.metric_kind == st::FrameMetric::Kind::SpdReg) j["epsilon"] = cfg.epsilon;
  j["dtw"] = cfg.use_dtw;
  j["resample"] = cfg.use_resample ? (cfg.auto_zeta ? "auto" : "fixed") : "off";
  if (cfg.classifier == st::ClassifierKind::Knn) j["K"] = cfg.knn_k;
  else j["C"] = cfg.auto_c ? json("auto") : json(cfg.c);
  if (folds > 0) j["folds"] = folds;
  j["seed"] = seed;
  return j;
}

std::string pipeline_echo_text(const json& j) {
  std::string s = "pipeline:";
  for (auto it = j.begin(); it != j.end(); ++it) {
    s += " " + it.key() + "=";
    if (it->is_string()) s += it->get<std::string>();
    else if (it->is_boolean()) s += *it ? "on" : "off";
    else s += fmt_g(it->get<double>());
  }
  s += "\n";
  return s;
}

int run_train(const Options& opts, const std::string& input,
              const std::string& output) {
  auto trajs = load_trajectories(input);
  auto cfg = opts.pipeline();
  auto [zeta1, zeta2] = st::detail::resolve_zetas(cfg, trajs);

  json meta = pipeline_echo(cfg, 0, opts.seed);
  meta["zeta1"] = zeta1;
  meta["zeta2"] = zeta2;
  meta["refs"] = trajs.size();

  if (cfg.classifier == st::ClassifierKind::PpfSvm) {
    double c = cfg.auto_c ? st::detail::choose_c(trajs, cfg, opts.seed) : cfg.c;
    auto model = st::train_pipeline_svm(trajs, cfg, c, opts.seed, zeta1, zeta2);
    st::save_model(output, model);
    meta["C"] = c;
    meta["final_gap"] = model.final_gap;
    meta["classes"] = model.classes;
  } else {
    auto model = st::train_pipeline_knn(trajs, cfg, zeta1, zeta2);
    st::save_model(output, model);
    meta["classes"] = model.classes;
  }
  meta["model"] = output;

  if (opts.machine()) {
    std::cout << meta.dump() << "\n";
  } else {
    std::cout << pipeline_echo_text(pipeline_echo(cfg, 0, opts.seed));
    std::cout << "zeta1: " << fmt_g(zeta1) << "\nzeta2: " << fmt_g(zeta2) << "\n";
    if (meta.contains("final_gap"))
      std::cout << "C: " << fmt_g(meta["C"].get<double>())
                << "\nfinal_gap: " << fmt_g(meta["final_gap"].get<double>()) << "\n";
    std::cout << "refs: " << trajs.size() << "\nwrote " << output << "\n";
  }
  return 0;
}

int run_predict(const Options& opts, const std::string& model_path,
                const std::string& input) {
  auto archive = st::load_model(model_path);
  auto loaded = st::load_sequences(input);
  warn_issues(loaded.issues);

  std::vector<st::Trajectory> trajs;
  for (const auto& rec : loaded.records) {
    try {
      trajs.push_back(st::to_trajectory(rec));
    } catch (const st::Error& e) {
      std::cerr << "warning: record '" << rec.id << "': " << e.what() << "\n";
    }
  }
  if (trajs.empty()) throw st::InvalidInput("predict: no usable records");

  const auto& classes = archive.kind == st::ClassifierKind::PpfSvm
                            ? archive.svm.classes
                            : archive.knn.classes;
  const auto& refs = archive.kind == st::ClassifierKind::PpfSvm
                         ? archive.svm.refs
                         : archive.knn.refs;
  if (refs.empty()) throw st::InvalidInput("predict: model has no references");
  for (const auto& t : trajs)
    if (t.landmark_count() != refs[0].landmark_count())
      throw st::DimensionMismatch("predict: record '" + t.id + "' has " +
                                  std::to_string(t.landmark_count()) +
                                  " landmarks, model expects " +
                                  std::to_string(refs[0].landmark_count()));
  std::vector<std::string> labels(trajs.size());
  std::vector<st::VecX> scores(trajs.size());
  st::parallel_for(trajs.size(), opts.threads, [&](std::size_t i) {
    if (archive.kind == st::ClassifierKind::PpfSvm) {
      auto pred = st::predict(archive.svm, trajs[i]);
      labels[i] = pred.label;
      scores[i] = pred.scores;
    } else {
      labels[i] = st::predict(archive.knn, trajs[i]);
    }
  });

  for (std::size_t i = 0; i < trajs.size(); ++i) {
    if (opts.machine()) {
      json j{{"id", trajs[i].id}, {"label", labels[i]}};
      if (archive.kind == st::ClassifierKind::PpfSvm) {
        json s;
        for (std::size_t c = 0; c < classes.size(); ++c)
          s[classes[c]] = scores[i](Eigen::Index(c));
        j["scores"] = std::move(s);
      }
      std::cout << j.dump() << "\n";
    } else {
      std::cout << trajs[i].id << " " << labels[i];
      if (archive.kind == st::ClassifierKind::PpfSvm)
        for (std::size_t c = 0; c < classes.size(); ++c)
          std::cout << " " << classes[c] << "=" << fmt_g(scores[i](Eigen::Index(c)));
      std::cout << "\n";
    }
  }
  return 0;
}

int run_eval(const Options& opts, const std::string& input,
             const std::string& output) {
  auto trajs = load_trajectories(input);
  auto cfg = opts.pipeline();
  auto result = st::cross_validate(trajs, opts.folds, cfg, opts.seed);

  std::string text;
  if (opts.machine()) {
    json j;
    j["pipeline"] = pipeline_echo(cfg, opts.folds, opts.seed);
    auto folds = json::array();
    for (std::size_t f = 0; f < result.fold_zeta1.size(); ++f) {
      json jf{{"zeta1", result.fold_zeta1[f]}, {"zeta2", result.fold_zeta2[f]}};
      if (cfg.classifier == st::ClassifierKind::PpfSvm) jf["C"] = result.fold_c[f];
      folds.push_back(std::move(jf));
    }
    j["folds"] = std::move(folds);
    j["report"] = result.report.to_json();
    auto preds = json::array();
    for (std::size_t i = 0; i < trajs.size(); ++i)
      preds.push_back(json{{"id", trajs[i].id},
                           {"truth", *trajs[i].label},
                           {"predicted", result.predictions[i]},
                           {"fold", result.fold_of[i]}});
    j["predictions"] = std::move(preds);
    text = j.dump(1) + "\n";
  } else {
    text = pipeline_echo_text(pipeline_echo(cfg, opts.folds, opts.seed));
    for (std::size_t f = 0; f < result.fold_zeta1.size(); ++f) {
      text += "fold " + std::to_string(f) + ": zeta1=" + fmt_g(result.fold_zeta1[f]) +
              " zeta2=" + fmt_g(result.fold_zeta2[f]);
      if (cfg.classifier == st::ClassifierKind::PpfSvm)
        text += " C=" + fmt_g(result.fold_c[f]);
      text += "\n";
    }
    text += result.report.text();
  }
  std::cout << text;
  if (!output.empty()) st::detail::atomic_write(output, text);
  return 0;
}

int run_bench(const Options& opts, int landmarks, int pairs) {
  if (landmarks < 3) throw st::InvalidParameter("bench: landmarks must be >= 3");
  if (pairs < 1) throw st::InvalidParameter("bench: pairs must be >= 1");

  st::Rng rng(st::derive_seed(opts.seed, 99));
  auto random_point = [&]() {
    st::MatX2 z(landmarks, 2);
    for (int i = 0; i < landmarks; ++i) {
      z(i, 0) = rng.normal();
      z(i, 1) = rng.normal();
    }
    return st::polar_decompose(st::center_landmarks(z));
  };
  std::vector<std::pair<st::PsdPoint, st::PsdPoint>> set;
  set.reserve(std::size_t(pairs));
  for (int i = 0; i < pairs; ++i) set.emplace_back(random_point(), random_point());

  struct Row {
    std::string name;
    double mean_us;
    double mean_value;
  };
  auto time_metric = [&](const st::FrameMetric& metric, const std::string& name) {
    double sum = 0.0;
    auto start = std::chrono::steady_clock::now();
    for (const auto& [a, b] : set) sum += metric(a, b);
    auto stop = std::chrono::steady_clock::now();
    double us = std::chrono::duration<double, std::micro>(stop - start).count();
    return Row{name, us / double(pairs), sum / double(pairs)};
  };

  std::vector<Row> rows;
  rows.push_back(time_metric(st::FrameMetric::closeness_metric(opts.k), "closeness"));
  rows.push_back(time_metric(st::FrameMetric::flat_metric(), "flat"));
  rows.push_back(time_metric(st::FrameMetric::spd_reg_metric(opts.epsilon), "spd-reg"));

  double ratio = rows[2].mean_us / rows[0].mean_us;
  if (opts.machine()) {
    json j;
    j["landmarks"] = landmarks;
    j["pairs"] = pairs;
    auto arr = json::array();
    for (const auto& r : rows)
      arr.push_back(json{{"metric", r.name},
                         {"mean_us", r.mean_us},
                         {"mean_value", r.mean_value}});
    j["rows"] = std::move(arr);
    j["ratio_spdreg_over_closeness"] = ratio;
    j["ratio_closeness_over_flat"] = rows[0].mean_us / rows[1].mean_us;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "landmarks: " << landmarks << "  pairs: " << pairs << "\n";
    for (const auto& r : rows)
      std::cout << r.name << ": mean_us=" << fmt_g(r.mean_us)
                << " mean_value=" << fmt_g(r.mean_value) << "\n";
    std::cout << "ratio spd-reg/closeness: " << fmt_g(ratio) << "\n";
    std::cout << "ratio closeness/flat: " << fmt_g(rows[0].mean_us / rows[1].mean_us)
              << "\n";
  }
  return 0;
}

int run_convert(const Options& opts, const std::string& input,
                const std::string& output, std::string from, std::string to) {
  auto infer = [](const std::string& path, const std::string& fallback) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".txt") return std::string("txt");
    if (path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl") return std::string("jsonl");
    return fallback;
  };
  if (from.empty()) from = infer(input, "jsonl");
  if (to.empty()) to = infer(output, from == "jsonl" ? "txt" : "jsonl");
  if ((from != "jsonl" && from != "txt") || (to != "jsonl" && to != "txt"))
    throw st::InvalidParameter("convert: formats must be 'jsonl' or 'txt'");

  auto loaded = from == "txt" ? st::load_sequences_txt(input) : st::load_sequences(input);
  warn_issues(loaded.issues);
  if (to == "txt")
    st::save_sequences_txt(output, loaded.records);
  else
    st::save_sequences(output, loaded.records);

  if (opts.machine()) {
    json j{{"records", loaded.records.size()},
           {"skipped", loaded.issues.size()},
           {"from", from},
           {"to", to},
           {"output", output}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "converted " << loaded.records.size() << " records (" << from
              << " -> " << to << ") to " << output << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape-trajectory analysis over planar landmark sequences"};
  app.require_subcommand(1);

  Options opts;
  app.add_option("--k", opts.k, "closeness covariance weight (>= 0)");
  app.add_option("--zeta1", opts.zeta1, "re-sampling drop threshold");
  app.add_option("--zeta2", opts.zeta2, "re-sampling insert threshold");
  app.add_flag("--auto-zeta", opts.auto_zeta,
               "derive zeta thresholds from the training split");
  app.add_flag("--no-resample", opts.no_resample, "disable adaptive re-sampling");
  app.add_flag("--no-dtw", opts.no_dtw, "replace DTW with lockstep comparison");
  app.add_option("--distance", opts.distance, "frame metric")
      ->check(CLI::IsMember({"closeness", "flat", "spd-reg"}));
  app.add_option("--epsilon", opts.epsilon,
                 "spd-reg ridge; <= 0 resolves per pair from the traces");
  app.add_option("--classifier", opts.classifier, "classifier")
      ->check(CLI::IsMember({"ppfsvm", "knn"}));
  app.add_option("--K", opts.knn_k, "k-NN neighbor count");
  app.add_option("--C", opts.c_value, "SVM regularization, a number or 'auto'");
  app.add_option("--folds", opts.folds, "cross-validation folds");
  app.add_option("--seed", opts.seed, "random seed");
  app.add_option("--threads", opts.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));

  std::string in1, in2, input, output, model_path, from, to;
  st::SynthSpec spec;
  int bench_landmarks = 68, bench_pairs = 1000;

  auto* dist = app.add_subcommand("dist", "distance between two frames or sequences");
  dist->add_option("a", in1, "file or file#id")->required();
  dist->add_option("b", in2, "file or file#id")->required();

  auto* align = app.add_subcommand("align", "DTW alignment path of two sequences");
  align->add_option("a", in1, "file or file#id")->required();
  align->add_option("b", in2, "file or file#id")->required();

  auto* resample = app.add_subcommand("resample", "adaptively re-sample sequences");
  resample->add_option("input", input, "input .seq.jsonl")->required();
  resample->add_option("-o,--output", output, "output .seq.jsonl")->required();

  auto* train = app.add_subcommand("train", "train a classifier, write a model");
  train->add_option("input", input, "labeled .seq.jsonl")->required();
  train->add_option("-o,--output", output, "model file")->required();

  auto* predict = app.add_subcommand("predict", "label sequences with a model");
  predict->add_option("model", model_path, "model file")->required();
  predict->add_option("input", input, ".seq.jsonl to label")->required();

  auto* eval = app.add_subcommand("eval", "cross-validated evaluation report");
  eval->add_option("input", input, "labeled .seq.jsonl")->required();
  eval->add_option("-o,--output", output, "also write the report here");

  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("-o,--output", output, "output .seq.jsonl")->required();
  synth->add_option("--classes", spec.classes, "class count (1..6)");
  synth->add_option("--landmarks", spec.landmarks, "landmarks per frame");
  synth->add_option("--frames-min", spec.frames_min, "minimum frames");
  synth->add_option("--frames-max", spec.frames_max, "maximum frames");
  synth->add_option("--per-class", spec.sequences_per_class, "sequences per class");
  synth->add_option("--amplitude-lo", spec.amplitude_lo, "deformation amplitude low");
  synth->add_option("--amplitude-hi", spec.amplitude_hi, "deformation amplitude high");
  synth->add_flag("--rigid,!--no-rigid", spec.rigid_motion,
                  "per-frame rigid motion nuisance");
  synth->add_option("--rate-warp", spec.rate_warp, "time-warp strength (0 = off)");
  synth->add_option("--sigma", spec.noise_sigma, "coordinate noise sigma");

  auto* bench = app.add_subcommand("bench", "per-pair timing of the frame metrics");
  bench->add_option("--landmarks", bench_landmarks, "landmark count");
  bench->add_option("--pairs", bench_pairs, "number of random pairs");

  auto* convert = app.add_subcommand("convert", "convert between jsonl and txt");
  convert->add_option("input", input, "input file")->required();
  convert->add_option("-o,--output", output, "output file")->required();
  convert->add_option("--from", from, "input format")
      ->check(CLI::IsMember({"jsonl", "txt"}));
  convert->add_option("--to", to, "output format")
      ->check(CLI::IsMember({"jsonl", "txt"}));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (opts.threads < 1) throw st::InvalidParameter("--threads must be >= 1");
    if (!(opts.k >= 0.0)) throw st::InvalidParameter("--k must be >= 0");
    spec.seed = opts.seed;
    if (*dist) return run_dist(opts, in1, in2);
    if (*align) return run_align(opts, in1, in2);
    if (*resample) return run_resample(opts, input, output);
    if (*train) return run_train(opts, input, output);
    if (*predict) return run_predict(opts, model_path, input);
    if (*eval) return run_eval(opts, input, output);
    if (*synth) return run_synth(spec, opts, output);
    if (*bench) return run_bench(opts, bench_landmarks, bench_pairs);
    if (*convert) return run_convert(opts, input, output, from, to);
    return 2;
  } catch (const st::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == st::ErrorKind::Validation ? 3 : 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
