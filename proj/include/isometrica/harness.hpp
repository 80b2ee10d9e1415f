#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isometrica/block_operator.hpp"
#include "isometrica/json_io.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

/// Sweep suites, named by their CLI tokens:
///   thm1  ||u*u - v*v|| <= ||u - v|| for partial isometries
///   thm7  the extremal bound d (1 - d^2/4)^(1/2) for d <= sqrt 2
///   thm4  certified partial-isometry paths for ||u - v|| < 1
///   thm5  certified extremal paths for ||u - v|| < 2
///   thm8  continuity criterion, witnesses and openness
enum class SweepKind { kSupport, kExtremalSupport, kIsometryPath, kExtremalPath, kContinuity };

std::string_view to_string(SweepKind kind);
std::optional<SweepKind> parse_sweep_kind(std::string_view token);

enum class ReportFormat { kJson, kCsv };

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  std::size_t max_dim = 8;
  ToleranceConfig tolerances;
  std::string output_path;  // empty: stdout
  ReportFormat format = ReportFormat::kJson;
  /// Target window for ||u - v|| in the thm7/thm4/thm5 generators; a negative
  /// d_max selects the suite default (sqrt 2, 0.95, 1.9).
  double d_min = 0.0;
  double d_max = -1.0;

  /// Throws InvalidArgument.
  void validate() const;
};

double default_d_max(SweepKind kind);

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double d = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool skipped = false;
  bool violation = false;
  bool equality = false;
  std::vector<std::string> flags;
  BlockOperator u;
  BlockOperator v;
};

struct SweepSummary {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  std::size_t equality_cases = 0;
  std::optional<double> min_margin;
  std::optional<std::size_t> worst_trial;
};

struct SweepReport {
  SweepKind kind = SweepKind::kSupport;
  RunConfig config;
  std::vector<TrialResult> trials;  // ordered by trial index
  SweepSummary summary;
  bool passed() const { return summary.violations == 0; }
};

/// Runs trials on min(ISOMETRICA_THREADS, hardware threads) workers. Trial i
/// draws from RandomStream(seed, i), so the result does not depend on the
/// worker count.
SweepReport run_sweep(SweepKind kind, const RunConfig& cfg);

/// Worker count for a run of `trials` trials.
std::size_t worker_count(std::size_t trials);

/// JSON report, or CSV with columns trial,seed,d,lhs,rhs,margin,flags.
std::string render_report(const SweepReport& report, ReportFormat format);

enum class GalleryKind { kExtremalSharpness, kProjectionEquality, kCounterexamples };

std::string_view to_string(GalleryKind kind);
std::optional<GalleryKind> parse_gallery_kind(std::string_view token);

struct GalleryParams {
  std::size_t points = 10;  // theta grid i (pi/2) / points, i = 1..points
  std::size_t pad = 0;

  void validate() const;
};

Json build_gallery(GalleryKind kind, const GalleryParams& params, const ToleranceConfig& cfg = {});

}  // namespace isometrica
