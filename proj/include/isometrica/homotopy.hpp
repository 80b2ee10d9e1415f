#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "isometrica/block_operator.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

enum class PathRecipe {
  kConstant,
  /// Freeze the right support, then rotate it: for ||u - v|| < 1.
  kSupportFreezeThenRotate,
  /// Polar part of the straight segment: for extremal pairs with ||u - v|| < 2.
  kExtremalSegment,
};

std::string_view to_string(PathRecipe recipe);

struct PathSample {
  double t = 0.0;
  BlockOperator w;
};

/// Sampled path of partial isometries; t strictly increasing from 0 to 1.
struct IsometryPath {
  std::vector<PathSample> samples;
  PathRecipe recipe = PathRecipe::kConstant;
  /// Smallest spectral gap of the operators whose polar parts were sampled.
  double min_segment_gap = 0.0;
};

struct PathEndpoints {
  BlockOperator from;
  BlockOperator to;
};

struct PathCertificate {
  bool all_partial_isometries = false;
  double max_residual = 0.0;
  double max_step = 0.0;
  bool endpoints_match = true;
  bool all_extremal = true;
  bool rank_constant = true;
  bool t_grid_valid = false;
  double min_segment_gap = 0.0;
  bool passed = false;
};

/// Homotopy through partial isometries for ||u - v|| < 1 - rank_tol.
///
/// Stage one follows t -> u(((1 - t) u + t v) p) with p = u* u, ending at
/// w = u(v p); stage two follows t -> u(v g(t)) along a projection path from p
/// to v* v. Each stage starts on a uniform grid of `resolution` points and is
/// bisected where consecutive samples differ by more than path_step_max.
IsometryPath partial_isometry_path(const BlockOperator& u, const BlockOperator& v, std::size_t resolution,
                                   const ToleranceConfig& cfg = {});

/// Homotopy through extremal partial isometries: t -> u((1 - t) u + t v).
/// Requires both endpoints extremal, ||u - v|| < 2 - rank_tol and compatible
/// defect supports (throws NotExtremal, TooFar, PatternConflict).
IsometryPath extremal_path(const BlockOperator& u, const BlockOperator& v, std::size_t resolution,
                           const ToleranceConfig& cfg = {});

/// Recomputes every certificate field from the samples. Never throws on a bad
/// path; the certificate carries the failure.
PathCertificate verify_path(const IsometryPath& path, bool require_extremal, const ToleranceConfig& cfg = {},
                            const std::optional<PathEndpoints>& endpoints = std::nullopt);

enum class ObstructionKind { kNone, kRankMismatch, kPatternMismatch };

std::string_view to_string(ObstructionKind kind);

/// NoObstruction is not a proof of homotopy.
struct HomotopyObstruction {
  ObstructionKind kind = ObstructionKind::kNone;
  std::optional<std::size_t> block;
};

HomotopyObstruction find_homotopy_obstruction(const BlockOperator& u, const BlockOperator& v,
                                              const ToleranceConfig& cfg = {});

/// Defect-support comparison used for extremal pairs.
std::optional<std::size_t> first_pattern_difference(const DefectPattern& a, const DefectPattern& b);

}  // namespace isometrica
