#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapetraj/error.hpp"
#include "shapetraj/linalg.hpp"
#include "shapetraj/rng.hpp"
#include "shapetraj/trajectory.hpp"

namespace shapetraj {

/// One landmark sequence as stored on disk: raw, uncentered coordinates.
struct SequenceRecord {
  std::string id;
  std::optional<std::string> label;
  std::vector<MatX2> frames;
};

inline Trajectory to_trajectory(const SequenceRecord& rec) {
  return build_trajectory(rec.frames, rec.id, rec.label);
}

inline std::vector<Trajectory> to_trajectories(const std::vector<SequenceRecord>& recs) {
  std::vector<Trajectory> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(to_trajectory(r));
  return out;
}

/// Canonical landmark coordinates of a factored trajectory: Z = U sqrt(S).
/// A point built from a centered configuration Z factors as Z = U R with
/// R = sqrt(S), so untouched frames round-trip to their centered originals;
/// interpolated frames come out in the gauge their alignment produced.
inline SequenceRecord to_record(const Trajectory& t) {
  SequenceRecord rec;
  rec.id = t.id;
  rec.label = t.label;
  rec.frames.reserve(t.points.size());
  for (const auto& p : t.points)
    rec.frames.push_back(p.basis * spd_sqrt(p.shape));
  return rec;
}

struct LoadResult {
  std::vector<SequenceRecord> records;
  std::vector<std::string> issues;  // per-record problems, skipped ids/lines
};

namespace detail {

inline SequenceRecord record_from_json(const nlohmann::json& j) {
  SequenceRecord rec;
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string())
    throw ParseError("record is not an object with a string 'id'");
  rec.id = j["id"].get<std::string>();
  if (j.contains("label") && !j["label"].is_null())
    rec.label = j["label"].get<std::string>();
  if (!j.contains("frames") || !j["frames"].is_array() || j["frames"].empty())
    throw ParseError("record '" + rec.id + "' has no frames");
  Eigen::Index n = -1;
  for (const auto& jf : j["frames"]) {
    if (!jf.is_array()) throw ParseError("record '" + rec.id + "': frame is not an array");
    MatX2 frame(Eigen::Index(jf.size()), 2);
    Eigen::Index r = 0;
    for (const auto& jp : jf) {
      if (!jp.is_array() || jp.size() != 2 || !jp[0].is_number() || !jp[1].is_number())
        throw ParseError("record '" + rec.id + "': point is not an [x, y] pair");
      frame(r, 0) = jp[0].get<double>();
      frame(r, 1) = jp[1].get<double>();
      ++r;
    }
    if (n < 0) n = frame.rows();
    if (frame.rows() != n)
      throw InconsistentFrameShape("record '" + rec.id + "': frame with " +
                                   std::to_string(frame.rows()) + " landmarks, expected " +
                                   std::to_string(n));
    rec.frames.push_back(std::move(frame));
  }
  return rec;
}

inline nlohmann::json record_to_json(const SequenceRecord& rec) {
  nlohmann::json j;
  j["id"] = rec.id;
  if (rec.label) j["label"] = *rec.label;
  auto frames = nlohmann::json::array();
  for (const auto& f : rec.frames) {
    auto jf = nlohmann::json::array();
    for (Eigen::Index r = 0; r < f.rows(); ++r)
      jf.push_back(nlohmann::json::array({f(r, 0), f(r, 1)}));
    frames.push_back(std::move(jf));
  }
  j["frames"] = std::move(frames);
  return j;
}

/// Writes through a sibling temp file and renames, so a failed run never
/// leaves a truncated output behind.
inline void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw InvalidInput("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidInput("cannot replace '" + path + "': " + ec.message());
  }
}

}  // namespace detail

/// Line-delimited records, one JSON object per line. A malformed record is
/// reported in `issues` and skipped; the rest of the file still loads.
inline LoadResult load_sequences(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  LoadResult out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.records.push_back(detail::record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      out.issues.push_back("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      out.issues.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (lineno == 0) out.issues.push_back("'" + path + "' is empty");
  return out;
}

inline void save_sequences(const std::string& path,
                           const std::vector<SequenceRecord>& records) {
  std::string content;
  for (const auto& rec : records) {
    content += detail::record_to_json(rec).dump();
    content += '\n';
  }
  detail::atomic_write(path, content);
}

/// Plain-text variant for conversion: records separated by blank lines, a
/// header line `id [label]`, then one line per frame with `x y` pairs.
inline LoadResult load_sequences_txt(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  LoadResult out;
  std::vector<std::string> block;
  std::size_t lineno = 0, block_start = 0, total_lines = 0;

  auto flush = [&]() {
    if (block.empty()) return;
    std::size_t start = block_start;
    std::vector<std::string> lines;
    lines.swap(block);
    try {
      std::istringstream head(lines[0]);
      SequenceRecord rec;
      std::string label;
      if (!(head >> rec.id)) throw ParseError("missing id in header");
      if (head >> label) rec.label = label;
      Eigen::Index n = -1;
      for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream ls(lines[i]);
        std::vector<double> nums;
        double v;
        while (ls >> v) nums.push_back(v);
        if (nums.empty() || nums.size() % 2 != 0)
          throw ParseError("record '" + rec.id + "': frame line needs an even number of values");
        MatX2 frame(Eigen::Index(nums.size() / 2), 2);
        for (Eigen::Index r = 0; r < frame.rows(); ++r) {
          frame(r, 0) = nums[std::size_t(2 * r)];
          frame(r, 1) = nums[std::size_t(2 * r + 1)];
        }
        if (n < 0) n = frame.rows();
        if (frame.rows() != n)
          throw InconsistentFrameShape("record '" + rec.id + "': frame with " +
                                       std::to_string(frame.rows()) +
                                       " landmarks, expected " + std::to_string(n));
        rec.frames.push_back(std::move(frame));
      }
      if (rec.frames.empty()) throw ParseError("record '" + rec.id + "' has no frames");
      out.records.push_back(std::move(rec));
    } catch (const Error& e) {
      out.issues.push_back("line " + std::to_string(start) + ": " + e.what());
    }
  };

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    ++total_lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
    } else {
      if (block.empty()) block_start = lineno;
      block.push_back(line);
    }
  }
  flush();
  if (total_lines == 0) out.issues.push_back("'" + path + "' is empty");
  return out;
}

inline void save_sequences_txt(const std::string& path,
                               const std::vector<SequenceRecord>& records) {
  std::string content;
  char buf[64];
  for (const auto& rec : records) {
    content += rec.id;
    if (rec.label) {
      content += ' ';
      content += *rec.label;
    }
    content += '\n';
    for (const auto& f : rec.frames) {
      for (Eigen::Index r = 0; r < f.rows(); ++r) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g", f(r, 0), f(r, 1));
        if (r) content += ' ';
        content += buf;
      }
      content += '\n';
    }
    content += '\n';
  }
  detail::atomic_write(path, content);
}

/// Controls for the synthetic landmark-sequence generator. Classes are
/// deformation programs over a jittered ring of landmarks; rate warps,
/// per-frame rigid motions, and coordinate noise are optional nuisances.
struct SynthSpec {
  int classes = 3;
  int landmarks = 16;
  int frames_min = 15;
  int frames_max = 30;
  int sequences_per_class = 20;
  double amplitude_lo = 0.55;  // per-sequence deformation amplitude range
  double amplitude_hi = 0.85;
  bool rigid_motion = true;    // per-frame random rotation/reflection + shift
  double rate_warp = 1.0;      // 0 = linear time; 1 = exponent in [1/3, 3]
  double noise_sigma = 0.01;   // coordinate noise, applied before the rigid move
  std::uint64_t seed = 0;
};

inline constexpr int kSynthMaxClasses = 6;

namespace detail {

inline const char* synth_class_name(int ci) {
  static const char* names[kSynthMaxClasses] = {"ystretch", "xstretch", "shear",
                                                "ystretch-ramp", "xstretch-ramp",
                                                "shear-ramp"};
  return names[ci];
}

}  // namespace detail

/// Deterministic synthetic dataset. Every sequence draws from four
/// independent seed streams (shape, warp, noise, rigid), so switching one
/// nuisance off never changes what the other streams produce; with the rigid
/// stream applied, frames differ from the unapplied run by an exact
/// Euclidean motion.
inline std::vector<SequenceRecord> synth_generate(const SynthSpec& spec) {
  if (spec.classes < 1 || spec.classes > kSynthMaxClasses)
    throw InvalidParameter("synth: classes must be in [1, " +
                           std::to_string(kSynthMaxClasses) + "]");
  if (spec.landmarks < 3) throw InvalidParameter("synth: landmarks must be >= 3");
  if (spec.frames_min < 2 || spec.frames_max < spec.frames_min)
    throw InvalidParameter("synth: need 2 <= frames_min <= frames_max");
  if (spec.sequences_per_class < 1)
    throw InvalidParameter("synth: sequences_per_class must be >= 1");
  if (!(spec.amplitude_lo > 0.0) || !(spec.amplitude_hi >= spec.amplitude_lo))
    throw InvalidParameter("synth: need 0 < amplitude_lo <= amplitude_hi");
  if (spec.rate_warp < 0.0) throw InvalidParameter("synth: rate_warp must be >= 0");
  if (spec.noise_sigma < 0.0) throw InvalidParameter("synth: noise_sigma must be >= 0");

  const int n = spec.landmarks;
  std::vector<SequenceRecord> out;
  out.reserve(std::size_t(spec.classes) * std::size_t(spec.sequences_per_class));
  std::uint64_t q = 0;  // global sequence index, fixes the stream layout
  for (int ci = 0; ci < spec.classes; ++ci) {
    const int program = ci % 3;
    const bool ramp = ci >= 3;  // time profile t instead of sin(pi t)
    for (int si = 0; si < spec.sequences_per_class; ++si, ++q) {
      Rng shape_rng(derive_seed(spec.seed, 4 * q + 0));
      Rng warp_rng(derive_seed(spec.seed, 4 * q + 1));
      Rng noise_rng(derive_seed(spec.seed, 4 * q + 2));
      Rng rigid_rng(derive_seed(spec.seed, 4 * q + 3));

      const int frames = spec.frames_min +
                         int(shape_rng.below(std::uint64_t(spec.frames_max - spec.frames_min + 1)));
      const double amplitude = shape_rng.uniform(spec.amplitude_lo, spec.amplitude_hi);
      MatX2 base(n, 2);
      for (int i = 0; i < n; ++i) {
        double angle = 2.0 * 3.14159265358979323846 *
                       (double(i) + 0.15 * shape_rng.uniform(-1.0, 1.0)) / double(n);
        double radius = 1.0 + 0.05 * shape_rng.uniform(-1.0, 1.0);
        base(i, 0) = radius * std::cos(angle);
        base(i, 1) = radius * std::sin(angle);
      }

      // always drawn so toggling the warp never shifts the other streams
      const double warp_draw = warp_rng.uniform(-1.0, 1.0);
      const double exponent =
          std::exp(spec.rate_warp * warp_draw * std::log(3.0));

      SequenceRecord rec;
      rec.id = std::string(detail::synth_class_name(ci)) + "-" +
               (si < 10 ? "0" : "") + std::to_string(si);
      rec.label = detail::synth_class_name(ci);
      rec.frames.reserve(std::size_t(frames));
      for (int f = 0; f < frames; ++f) {
        double u = double(f) / double(frames - 1);
        double t = std::pow(u, exponent);
        double s = amplitude * (ramp ? t : std::sin(3.14159265358979323846 * t));

        MatX2 frame = base;
        for (int i = 0; i < n; ++i) {
          double x = frame(i, 0), y = frame(i, 1);
          // The strength tapers across the shape. A uniform stretch or shear
          // is a linear map of the base and would leave the Gram column span
          // fixed, hiding the class from the subspace part of the metric;
          // the taper bends the span along a class-specific curve.
          switch (program) {
            case 0: frame(i, 1) = (1.0 + s * (1.0 + 0.6 * x)) * y; break;
            case 1: frame(i, 0) = (1.0 + s * (1.0 + 0.6 * y)) * x; break;
            default: frame(i, 0) = x + s * (1.0 + 0.6 * x) * y; break;
          }
        }
        for (int i = 0; i < n; ++i) {
          frame(i, 0) += spec.noise_sigma * noise_rng.normal();
          frame(i, 1) += spec.noise_sigma * noise_rng.normal();
        }
        // rigid draws are consumed unconditionally for stream stability
        double angle = rigid_rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        bool reflect = rigid_rng.uniform() < 0.5;
        double tx = rigid_rng.uniform(-5.0, 5.0);
        double ty = rigid_rng.uniform(-5.0, 5.0);
        if (spec.rigid_motion) {
          Mat2 rot;
          rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
          if (reflect) rot.col(1) = -rot.col(1);
          frame = (frame * rot.transpose()).eval();
          frame.col(0).array() += tx;
          frame.col(1).array() += ty;
        }
        rec.frames.push_back(std::move(frame));
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace shapetraj
