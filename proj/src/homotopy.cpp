#include "isometrica/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "isometrica/error.hpp"
#include "isometrica/polar.hpp"
#include "isometrica/projection_geometry.hpp"

namespace isometrica {

namespace {

constexpr int kRefinementRounds = 12;

struct StageSample {
  double s = 0.0;
  BlockOperator w;
  double gap = 0.0;
};

using StageFunction = std::function<StageSample(double)>;

// Uniform grid of `resolution` points on [0, 1], bisected until every step is
// at most path_step_max.
std::vector<StageSample> sample_stage(const StageFunction& eval, std::size_t resolution,
                                      const ToleranceConfig& cfg) {
  const std::size_t n = std::max<std::size_t>(resolution, 2);
  std::vector<StageSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    samples.push_back(eval(s));
  }
  for (int round = 0;; ++round) {
    std::vector<StageSample> refined;
    refined.reserve(samples.size() * 2);
    bool split = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      // refined.back() still holds samples[i - 1]; the source slot was moved from.
      if (i > 0 && (samples[i].w - refined.back().w).norm() > cfg.path_step_max) {
        if (round == kRefinementRounds) {
          throw Error(ErrorKind::kStepTooLarge,
                      "step above path_step_max after " + std::to_string(kRefinementRounds) + " refinements");
        }
        refined.push_back(eval(0.5 * (refined.back().s + samples[i].s)));
        split = true;
      }
      refined.push_back(std::move(samples[i]));
    }
    samples = std::move(refined);
    if (!split) return samples;
  }
}

StageSample polar_sample(double s, const BlockOperator& a, const ToleranceConfig& cfg) {
  PolarData pd = polar_decompose(a, cfg);
  return {s, std::move(pd.u), pd.gap};
}

void require_partial_isometry(const BlockOperator& w, const char* name, const ToleranceConfig& cfg) {
  const auto check = is_partial_isometry(w, cfg);
  if (!check.ok) {
    throw Error(ErrorKind::kNotPartialIsometry,
                std::string(name) + " has residual " + std::to_string(check.residual));
  }
}

void snap_endpoint(BlockOperator& sample, const BlockOperator& exact, const ToleranceConfig& cfg) {
  const double gap = (sample - exact).norm();
  if (gap > cfg.iso_tol) {
    throw Error(ErrorKind::kIllConditioned,
                "path endpoint misses its target by " + std::to_string(gap));
  }
  sample = exact;
}

void append_stage(IsometryPath& path, std::vector<StageSample>& stage, double t0, double t1, bool skip_first) {
  for (std::size_t i = skip_first ? 1 : 0; i < stage.size(); ++i) {
    path.samples.push_back({t0 + (t1 - t0) * stage[i].s, std::move(stage[i].w)});
    path.min_segment_gap = std::min(path.min_segment_gap, stage[i].gap);
  }
}

IsometryPath constant_path(const BlockOperator& u, const ToleranceConfig& cfg) {
  IsometryPath path;
  path.recipe = PathRecipe::kConstant;
  path.min_segment_gap = polar_decompose(u, cfg).gap;
  path.samples = {{0.0, u}, {1.0, u}};
  return path;
}

}  // namespace

std::string_view to_string(PathRecipe recipe) {
  switch (recipe) {
    case PathRecipe::kConstant: return "constant";
    case PathRecipe::kSupportFreezeThenRotate: return "support_freeze_then_rotate";
    case PathRecipe::kExtremalSegment: return "extremal_segment";
  }
  return "unknown";
}

std::string_view to_string(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::kNone: return "NoObstruction";
    case ObstructionKind::kRankMismatch: return "RankMismatch";
    case ObstructionKind::kPatternMismatch: return "PatternMismatch";
  }
  return "unknown";
}

IsometryPath partial_isometry_path(const BlockOperator& u, const BlockOperator& v, std::size_t resolution,
                                   const ToleranceConfig& cfg) {
  if (!(u.shape() == v.shape())) throw Error(ErrorKind::kShapeMismatch, "endpoints differ in shape");
  require_partial_isometry(u, "u", cfg);
  require_partial_isometry(v, "v", cfg);
  const double d = (u - v).norm();
  if (d >= 1.0 - cfg.rank_tol) throw Error(ErrorKind::kTooFar, "||u - v|| = " + std::to_string(d));
  if (u == v) return constant_path(u, cfg);

  const BlockOperator p = u.adjoint() * u;
  const BlockOperator q = v.adjoint() * v;

  auto freeze = [&](double s) {
    const BlockOperator f = (1.0 - s) * u + s * v;
    return polar_sample(s, f * p, cfg);
  };
  std::vector<StageSample> first = sample_stage(freeze, resolution, cfg);

  std::vector<ProjectionRotation> rotations;
  for (std::size_t i = 0; i < p.block_count(); ++i) rotations.emplace_back(p.block(i), q.block(i), cfg);
  auto rotate = [&](double s) {
    std::vector<ComplexMatrix> g;
    for (const auto& r : rotations) g.push_back(r.at(s));
    return polar_sample(s, v * BlockOperator(std::move(g)), cfg);
  };
  std::vector<StageSample> second = sample_stage(rotate, resolution, cfg);

  IsometryPath path;
  path.recipe = PathRecipe::kSupportFreezeThenRotate;
  path.min_segment_gap = std::numeric_limits<double>::infinity();
  append_stage(path, first, 0.0, 0.5, false);
  append_stage(path, second, 0.5, 1.0, true);
  snap_endpoint(path.samples.front().w, u, cfg);
  snap_endpoint(path.samples.back().w, v, cfg);
  path.samples.front().t = 0.0;
  path.samples.back().t = 1.0;
  return path;
}

IsometryPath extremal_path(const BlockOperator& u, const BlockOperator& v, std::size_t resolution,
                           const ToleranceConfig& cfg) {
  if (!(u.shape() == v.shape())) throw Error(ErrorKind::kShapeMismatch, "endpoints differ in shape");
  if (!is_extremal(u, cfg)) throw Error(ErrorKind::kNotExtremal, "u is not extremal");
  if (!is_extremal(v, cfg)) throw Error(ErrorKind::kNotExtremal, "v is not extremal");
  const double d = (u - v).norm();
  if (d >= 2.0 - cfg.rank_tol) throw Error(ErrorKind::kTooFar, "||u - v|| = " + std::to_string(d));

  const DefectPattern pu = defect_pattern(u, cfg);
  const DefectPattern pv = defect_pattern(v, cfg);
  for (std::size_t i = 0; i < pu.blocks.size(); ++i) {
    const bool u_isometry = pu.blocks[i].left_defect_rank > 0 && pu.blocks[i].right_defect_rank == 0;
    const bool u_coisometry = pu.blocks[i].left_defect_rank == 0 && pu.blocks[i].right_defect_rank > 0;
    const bool v_isometry = pv.blocks[i].left_defect_rank > 0 && pv.blocks[i].right_defect_rank == 0;
    const bool v_coisometry = pv.blocks[i].left_defect_rank == 0 && pv.blocks[i].right_defect_rank > 0;
    if ((u_isometry && v_coisometry) || (u_coisometry && v_isometry)) {
      throw Error(ErrorKind::kPatternConflict, "block " + std::to_string(i) +
                                                   " pairs a proper isometry with a proper co-isometry");
    }
  }

  if (u == v) return constant_path(u, cfg);

  auto segment = [&](double s) { return polar_sample(s, (1.0 - s) * u + s * v, cfg); };
  std::vector<StageSample> samples = sample_stage(segment, resolution, cfg);

  IsometryPath path;
  path.recipe = PathRecipe::kExtremalSegment;
  path.min_segment_gap = std::numeric_limits<double>::infinity();
  append_stage(path, samples, 0.0, 1.0, false);
  snap_endpoint(path.samples.front().w, u, cfg);
  snap_endpoint(path.samples.back().w, v, cfg);
  return path;
}

PathCertificate verify_path(const IsometryPath& path, bool require_extremal, const ToleranceConfig& cfg,
                            const std::optional<PathEndpoints>& endpoints) {
  PathCertificate cert;
  cert.min_segment_gap = path.min_segment_gap;
  const auto& samples = path.samples;
  if (samples.empty()) return cert;

  cert.t_grid_valid = samples.front().t == 0.0 && samples.back().t == 1.0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].t > samples[i - 1].t)) cert.t_grid_valid = false;

  cert.all_partial_isometries = true;
  std::optional<std::vector<std::size_t>> ranks;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const BlockOperator& w = samples[i].w;
    const auto check = is_partial_isometry(w, cfg);
    cert.max_residual = std::max(cert.max_residual, check.residual);
    if (!check.ok) {
      cert.all_partial_isometries = false;
      cert.all_extremal = false;
    } else if (require_extremal && !is_extremal(w, cfg)) {
      cert.all_extremal = false;
    }
    const auto r = support_ranks(w);
    if (!ranks) ranks = r;
    else if (*ranks != r) cert.rank_constant = false;
    if (i > 0) {
      if (!(w.shape() == samples[i - 1].w.shape())) {
        cert.max_step = std::numeric_limits<double>::infinity();
      } else {
        cert.max_step = std::max(cert.max_step, (w - samples[i - 1].w).norm());
      }
    }
  }
  if (endpoints) {
    auto close = [&](const BlockOperator& a, const BlockOperator& b) {
      return a.shape() == b.shape() && (a - b).norm() <= cfg.iso_tol;
    };
    cert.endpoints_match = close(samples.front().w, endpoints->from) && close(samples.back().w, endpoints->to);
  }
  cert.passed = cert.t_grid_valid && cert.all_partial_isometries && cert.max_step <= cfg.path_step_max &&
                cert.endpoints_match && cert.rank_constant && (!require_extremal || cert.all_extremal);
  return cert;
}

std::optional<std::size_t> first_pattern_difference(const DefectPattern& a, const DefectPattern& b) {
  const std::size_t n = std::min(a.blocks.size(), b.blocks.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((a.blocks[i].left_defect_rank > 0) != (b.blocks[i].left_defect_rank > 0) ||
        (a.blocks[i].right_defect_rank > 0) != (b.blocks[i].right_defect_rank > 0)) {
      return i;
    }
  }
  if (a.blocks.size() != b.blocks.size()) return n;
  return std::nullopt;
}

HomotopyObstruction find_homotopy_obstruction(const BlockOperator& u, const BlockOperator& v,
                                              const ToleranceConfig& cfg) {
  if (!(u.shape() == v.shape())) throw Error(ErrorKind::kShapeMismatch, "endpoints differ in shape");
  require_partial_isometry(u, "u", cfg);
  require_partial_isometry(v, "v", cfg);

  // Rank of w*w is a continuous integer along any path of partial isometries.
  const auto ru = support_ranks(u);
  const auto rv = support_ranks(v);
  for (std::size_t i = 0; i < ru.size(); ++i) {
    if (ru[i] != rv[i]) return {ObstructionKind::kRankMismatch, i};
  }
  if (is_extremal(u, cfg) && is_extremal(v, cfg)) {
    if (auto block = first_pattern_difference(defect_pattern(u, cfg), defect_pattern(v, cfg))) {
      return {ObstructionKind::kPatternMismatch, *block};
    }
  }
  return {};
}

}  // namespace isometrica
