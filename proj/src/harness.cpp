#include "isometrica/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

#include "isometrica/continuity.hpp"
#include "isometrica/error.hpp"
#include "isometrica/homotopy.hpp"
#include "isometrica/inequalities.hpp"
#include "isometrica/polar.hpp"

namespace isometrica {

namespace {

constexpr double kInequalitySlack = 1e-10;
constexpr double kGapSlack = 1e-9;
constexpr double kJumpTolerance = 1e-8;
constexpr std::size_t kPathResolution = 8;
constexpr std::size_t kMaxAttempts = 64;
constexpr std::size_t kProbeTrials = 8;

std::vector<std::size_t> random_ranks(const BlockShape& shape, RandomStream& rng) {
  std::vector<std::size_t> ranks;
  for (const auto& [out, in] : shape.blocks()) ranks.push_back(rng.uniform_int(0, std::min(out, in)));
  return ranks;
}

std::vector<std::size_t> full_ranks(const BlockShape& shape) {
  std::vector<std::size_t> ranks;
  for (const auto& [out, in] : shape.blocks()) ranks.push_back(std::min(out, in));
  return ranks;
}

// v = W1 u W2 with W1, W2 unitaries near the identity, block by block.
BlockOperator rotate(const BlockOperator& u, double strength, RandomStream& rng) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : u.blocks()) {
    const ComplexMatrix w1 = random_unitary_near_identity(b.rows(), strength, rng);
    const ComplexMatrix w2 = random_unitary_near_identity(b.cols(), strength, rng);
    blocks.push_back(w1 * b * w2);
  }
  return BlockOperator(std::move(blocks));
}

double log_uniform(RandomStream& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, rng.uniform(lo_exp, hi_exp));
}

struct Window {
  double lo;
  double hi;
  bool contains(double d) const { return d >= lo && d <= hi; }
};

// Rejection sampling for a partner of u inside the window. The rotation
// strength is the bias knob: small strengths give small d. Falls back to the
// last candidate, flagged, when the window is never hit.
BlockOperator partner_in_window(const BlockOperator& u, Window w, bool allow_independent, RandomStream& rng,
                                std::vector<std::string>& flags) {
  BlockOperator candidate;
  double hi_exp = 0.7;
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    if (allow_independent && rng.uniform() < 0.25) {
      candidate = random_extremal(u.shape(), rng);
    } else {
      candidate = rotate(u, log_uniform(rng, -3.0, hi_exp), rng);
    }
    const double d = (u - candidate).norm();
    if (w.contains(d)) return candidate;
    if (d > w.hi) hi_exp -= 0.25;
    if (d < w.lo) hi_exp += 0.25;
    hi_exp = std::clamp(hi_exp, -2.5, 1.0);
  }
  flags.emplace_back("outside_target_window");
  return candidate;
}

BlockShape shape_with_square_block(RandomStream& rng, std::size_t max_dim) {
  BlockShape shape = random_shape(rng, max_dim);
  std::vector<std::pair<std::size_t, std::size_t>> dims(shape.blocks().begin(), shape.blocks().end());
  dims[0].first = std::max<std::size_t>(dims[0].first, 2);
  dims[0].second = std::max<std::size_t>(dims[0].second, 2);
  return BlockShape(std::move(dims));
}

void run_support_trial(TrialResult& r, const RunConfig& cfg, RandomStream& rng) {
  const ToleranceConfig& tol = cfg.tolerances;
  const BlockShape shape = random_shape(rng, cfg.max_dim);
  switch (rng.uniform_int(0, 2)) {
    case 0: {
      r.flags.emplace_back("independent");
      r.u = random_partial_isometry(shape, random_ranks(shape, rng), rng);
      r.v = random_partial_isometry(shape, random_ranks(shape, rng), rng);
      break;
    }
    case 1: {
      r.flags.emplace_back("rotated");
      r.u = random_partial_isometry(shape, random_ranks(shape, rng), rng);
      r.v = rotate(r.u, log_uniform(rng, -3.0, 0.5), rng);
      break;
    }
    default: {
      r.flags.emplace_back("projections");
      std::vector<std::pair<std::size_t, std::size_t>> dims;
      for (const auto& [out, in] : shape.blocks()) dims.emplace_back(out, out);
      const BlockShape square(std::move(dims));
      const BlockOperator a = random_partial_isometry(square, random_ranks(square, rng), rng);
      const BlockOperator b = random_partial_isometry(square, random_ranks(square, rng), rng);
      r.u = a.adjoint() * a;
      r.v = b.adjoint() * b;
      break;
    }
  }
  const InequalityMargin m = check_support_inequality(r.u, r.v, tol);
  r.d = m.rhs;
  r.lhs = m.lhs;
  r.rhs = m.rhs;
  r.margin = m.margin;
  r.equality = m.is_equality_case;
  r.violation = m.margin < -kInequalitySlack;
}

void run_extremal_support_trial(TrialResult& r, const RunConfig& cfg, Window w, RandomStream& rng) {
  const ToleranceConfig& tol = cfg.tolerances;
  const BlockShape shape = random_shape(rng, cfg.max_dim);
  r.u = random_extremal(shape, rng);
  r.v = partner_in_window(r.u, w, true, rng, r.flags);
  r.d = (r.u - r.v).norm();
  InequalityMargin m;
  try {
    m = check_extremal_support_inequality(r.u, r.v, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kOutOfRange) throw;
    r.skipped = true;
    r.flags.emplace_back("OutOfRange");
    return;
  }
  r.lhs = m.lhs;
  r.rhs = m.rhs;
  r.margin = m.margin;
  r.equality = m.is_equality_case;
  r.violation = m.margin < -kInequalitySlack;
  // The extremal bound never exceeds the general one.
  if (m.lhs > r.d + kInequalitySlack) {
    r.flags.emplace_back("exceeds_linear_bound");
    r.violation = true;
  }
}

void check_exact_endpoints(const IsometryPath& path, TrialResult& r) {
  if (!(path.samples.front().w == r.u) || !(path.samples.back().w == r.v)) {
    r.flags.emplace_back("endpoints_inexact");
    r.violation = true;
  }
}

void flag_certificate(const PathCertificate& c, TrialResult& r) {
  if (c.passed) return;
  r.violation = true;
  r.flags.emplace_back("certificate_failed");
  if (!c.all_partial_isometries) r.flags.emplace_back("not_partial_isometry");
  if (!c.endpoints_match) r.flags.emplace_back("endpoint_mismatch");
  if (!c.all_extremal) r.flags.emplace_back("not_extremal");
  if (!c.rank_constant) r.flags.emplace_back("rank_jump");
  if (!c.t_grid_valid) r.flags.emplace_back("bad_t_grid");
}

void run_isometry_path_trial(TrialResult& r, const RunConfig& cfg, Window w, RandomStream& rng) {
  const ToleranceConfig& tol = cfg.tolerances;
  const BlockShape shape = random_shape(rng, cfg.max_dim);
  r.u = random_partial_isometry(shape, random_ranks(shape, rng), rng);
  r.v = partner_in_window(r.u, w, false, rng, r.flags);
  r.d = (r.u - r.v).norm();
  const IsometryPath path = partial_isometry_path(r.u, r.v, kPathResolution, tol);
  const PathCertificate c = verify_path(path, false, tol, PathEndpoints{r.u, r.v});
  r.lhs = c.max_step;
  r.rhs = tol.path_step_max;
  r.margin = r.rhs - r.lhs;
  flag_certificate(c, r);
  check_exact_endpoints(path, r);
  if (r.margin < 0.0) r.violation = true;
}

void run_extremal_path_trial(TrialResult& r, const RunConfig& cfg, Window w, RandomStream& rng) {
  const ToleranceConfig& tol = cfg.tolerances;
  const BlockShape shape = random_shape(rng, cfg.max_dim);
  r.u = random_extremal(shape, rng);
  r.v = partner_in_window(r.u, w, false, rng, r.flags);
  r.d = (r.u - r.v).norm();
  const IsometryPath path = extremal_path(r.u, r.v, kPathResolution, tol);
  const PathCertificate c = verify_path(path, true, tol, PathEndpoints{r.u, r.v});
  r.lhs = 1.0 - r.d / 2.0;
  r.rhs = c.min_segment_gap;
  r.margin = r.rhs - r.lhs;
  flag_certificate(c, r);
  check_exact_endpoints(path, r);
  if (r.margin < -kGapSlack) {
    r.flags.emplace_back("gap_below_bound");
    r.violation = true;
  }
  if (!(defect_pattern(r.u, tol) == defect_pattern(r.v, tol))) {
    r.flags.emplace_back("pattern_mismatch");
    r.violation = true;
  }
}

void run_continuity_trial(TrialResult& r, const RunConfig& cfg, RandomStream& rng) {
  const ToleranceConfig& tol = cfg.tolerances;
  const bool want_discontinuity = r.trial % 2 == 0;
  if (want_discontinuity) {
    const BlockShape shape = shape_with_square_block(rng, cfg.max_dim);
    std::vector<std::size_t> ranks = random_ranks(shape, rng);
    ranks[0] = rng.uniform_int(0, std::min(shape.out_dim(0), shape.in_dim(0)) - 1);
    r.u = random_operator(shape, ranks, rng);
  } else {
    const BlockShape shape = random_shape(rng, cfg.max_dim);
    r.u = random_operator(shape, full_ranks(shape), rng);
  }
  const ContinuityReport report = continuity_criterion(r.u, tol);
  const bool extremal = is_extremal(polar_part(r.u, tol), tol);
  r.flags.emplace_back(report.is_continuity_point ? "continuity_point" : "discontinuity_point");
  if (report.is_continuity_point != extremal) {
    r.flags.emplace_back("criterion_disagrees_with_extremality");
    r.violation = true;
  }
  if (report.is_continuity_point == want_discontinuity) {
    r.flags.emplace_back("unexpected_verdict");
    r.violation = true;
  }

  if (!report.is_continuity_point) {
    r.v = *report.witness;
    const std::vector<double> ts = {1e-1, 1e-2, 1e-3};
    double worst = 0.0;
    for (const auto& [t, jump] : discontinuity_demo(r.u, r.v, ts, tol)) worst = std::max(worst, std::abs(jump - 1.0));
    r.d = 1.0;
    r.lhs = worst;
    r.rhs = kJumpTolerance;
    r.margin = r.rhs - r.lhs;
    if (r.margin < 0.0) r.violation = true;
    return;
  }
  const double gap = spectral_gap(r.u, tol).gap;
  const OpennessProbe probe = continuity_openness_probe(r.u, gap / 4.0, kProbeTrials, rng.next_u64(), tol);
  r.v = BlockOperator::zero(r.u.shape());
  r.d = gap;
  r.lhs = gap / 4.0;
  r.rhs = gap / 2.0;
  r.margin = r.rhs - r.lhs;
  if (!probe.passed) {
    r.flags.emplace_back("openness_probe_failed");
    r.violation = true;
  }
}

TrialResult run_trial(SweepKind kind, const RunConfig& cfg, std::size_t trial) {
  TrialResult r;
  r.trial = trial;
  r.seed = cfg.seed;
  RandomStream rng(cfg.seed, trial);
  const Window w{cfg.d_min, cfg.d_max < 0.0 ? default_d_max(kind) : cfg.d_max};
  try {
    switch (kind) {
      case SweepKind::kSupport: run_support_trial(r, cfg, rng); break;
      case SweepKind::kExtremalSupport: run_extremal_support_trial(r, cfg, w, rng); break;
      case SweepKind::kIsometryPath: run_isometry_path_trial(r, cfg, w, rng); break;
      case SweepKind::kExtremalPath: run_extremal_path_trial(r, cfg, w, rng); break;
      case SweepKind::kContinuity: run_continuity_trial(r, cfg, rng); break;
    }
  } catch (const Error& e) {
    r.violation = true;
    r.flags.emplace_back(std::string("error:") + std::string(to_string(e.kind())));
  }
  return r;
}

SweepSummary summarize(const std::vector<TrialResult>& trials) {
  SweepSummary s;
  for (const auto& r : trials) {
    if (r.skipped) {
      ++s.skipped;
      continue;
    }
    ++s.checked;
    if (r.violation) ++s.violations;
    if (r.equality) ++s.equality_cases;
    if (!s.min_margin || r.margin < *s.min_margin) {
      s.min_margin = r.margin;
      s.worst_trial = r.trial;
    }
  }
  return s;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += '|';
    out += f;
  }
  return out;
}

Json tolerances_json(const ToleranceConfig& t) {
  Json j;
  j["rank_tol"] = t.rank_tol;
  j["iso_tol"] = t.iso_tol;
  j["eig_tol"] = t.eig_tol;
  j["path_step_max"] = t.path_step_max;
  return j;
}

bool uses_window(SweepKind kind) {
  return kind == SweepKind::kExtremalSupport || kind == SweepKind::kIsometryPath ||
         kind == SweepKind::kExtremalPath;
}

std::string render_json(const SweepReport& report) {
  const RunConfig& cfg = report.config;
  const SweepSummary& s = report.summary;
  Json j;
  j["command"] = "sweep";
  j["which"] = std::string(to_string(report.kind));
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["max_dim"] = cfg.max_dim;
  j["tolerances"] = tolerances_json(cfg.tolerances);
  if (uses_window(report.kind)) {
    j["d_window"] = Json::array({cfg.d_min, cfg.d_max < 0.0 ? default_d_max(report.kind) : cfg.d_max});
  }
  Json summary;
  summary["passed"] = report.passed();
  summary["checked"] = s.checked;
  summary["violations"] = s.violations;
  summary["skipped"] = s.skipped;
  summary["equality_cases"] = s.equality_cases;
  summary["min_margin"] = s.min_margin ? Json(*s.min_margin) : Json(nullptr);
  j["summary"] = std::move(summary);

  if (s.worst_trial) {
    const TrialResult& w = report.trials[*s.worst_trial];
    Json worst;
    worst["trial"] = w.trial;
    worst["d"] = w.d;
    worst["margin"] = w.margin;
    worst["u"] = to_json(w.u);
    worst["v"] = to_json(w.v);
    j["worst"] = std::move(worst);
  } else {
    j["worst"] = nullptr;
  }

  Json results = Json::array();
  for (const auto& r : report.trials) {
    Json e;
    e["trial"] = r.trial;
    e["seed"] = r.seed;
    e["d"] = r.d;
    e["lhs"] = r.skipped ? Json(nullptr) : Json(r.lhs);
    e["rhs"] = r.skipped ? Json(nullptr) : Json(r.rhs);
    e["margin"] = r.skipped ? Json(nullptr) : Json(r.margin);
    e["skipped"] = r.skipped;
    e["violation"] = r.violation;
    e["equality"] = r.equality;
    e["flags"] = r.flags;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  return j.dump(2) + "\n";
}

std::string render_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "trial,seed,d,lhs,rhs,margin,flags\n";
  for (const auto& r : report.trials) {
    std::vector<std::string> flags = r.flags;
    if (r.skipped) flags.emplace_back("skipped");
    if (r.violation) flags.emplace_back("violation");
    if (r.equality) flags.emplace_back("equality");
    out << r.trial << ',' << r.seed << ',' << format_double(r.d) << ',';
    if (r.skipped) {
      out << ",,";
    } else {
      out << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.margin);
    }
    out << ',' << join_flags(flags) << '\n';
  }
  return out.str();
}

}  // namespace

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kSupport: return "thm1";
    case SweepKind::kExtremalSupport: return "thm7";
    case SweepKind::kIsometryPath: return "thm4";
    case SweepKind::kExtremalPath: return "thm5";
    case SweepKind::kContinuity: return "thm8";
  }
  return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view token) {
  for (auto k : {SweepKind::kSupport, SweepKind::kExtremalSupport, SweepKind::kIsometryPath,
                 SweepKind::kExtremalPath, SweepKind::kContinuity}) {
    if (to_string(k) == token) return k;
  }
  return std::nullopt;
}

double default_d_max(SweepKind kind) {
  switch (kind) {
    case SweepKind::kExtremalSupport: return std::numbers::sqrt2;
    case SweepKind::kIsometryPath: return 0.95;
    case SweepKind::kExtremalPath: return 1.9;
    default: return 2.0;
  }
}

void RunConfig::validate() const {
  tolerances.validate();
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be at least 1");
  if (max_dim < 2 || max_dim > 64) throw Error(ErrorKind::kInvalidArgument, "max_dim must lie in [2, 64]");
  if (!(d_min >= 0.0 && d_min <= 2.0)) throw Error(ErrorKind::kInvalidArgument, "d_min must lie in [0, 2]");
  if (d_max >= 0.0 && !(d_max >= d_min && d_max <= 2.0))
    throw Error(ErrorKind::kInvalidArgument, "d_max must lie in [d_min, 2]");
}

std::size_t worker_count(std::size_t trials) {
  std::size_t n = std::max<unsigned>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ISOMETRICA_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<std::size_t>(n, cap);
  }
  return std::max<std::size_t>(1, std::min(n, trials));
}

SweepReport run_sweep(SweepKind kind, const RunConfig& cfg) {
  cfg.validate();
  SweepReport report;
  report.kind = kind;
  report.config = cfg;
  report.trials.resize(cfg.trials);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) report.trials[i] = run_trial(kind, cfg, i);
  };
  const std::size_t workers = worker_count(cfg.trials);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work);
  }
  report.summary = summarize(report.trials);
  return report;
}

std::string render_report(const SweepReport& report, ReportFormat format) {
  return format == ReportFormat::kCsv ? render_csv(report) : render_json(report);
}

std::string_view to_string(GalleryKind kind) {
  switch (kind) {
    case GalleryKind::kExtremalSharpness: return "thm7_sharpness";
    case GalleryKind::kProjectionEquality: return "thm1_equality";
    case GalleryKind::kCounterexamples: return "counterexamples";
  }
  return "unknown";
}

std::optional<GalleryKind> parse_gallery_kind(std::string_view token) {
  for (auto k : {GalleryKind::kExtremalSharpness, GalleryKind::kProjectionEquality, GalleryKind::kCounterexamples}) {
    if (to_string(k) == token) return k;
  }
  return std::nullopt;
}

void GalleryParams::validate() const {
  if (points < 1 || points > 10000) throw Error(ErrorKind::kInvalidArgument, "points must lie in [1, 10000]");
  if (pad > 62) throw Error(ErrorKind::kInvalidArgument, "pad must be at most 62");
}

namespace {

Json margin_json(const InequalityMargin& m) {
  Json j;
  j["lhs"] = m.lhs;
  j["rhs"] = m.rhs;
  j["margin"] = m.margin;
  j["equality"] = m.is_equality_case;
  return j;
}

Json sharpness_gallery(const GalleryParams& params, const ToleranceConfig& cfg) {
  Json entries = Json::array();
  std::size_t equalities = 0;
  for (std::size_t i = 1; i <= params.points; ++i) {
    const double theta = static_cast<double>(i) * (std::numbers::pi / 2) / static_cast<double>(params.points);
    const OperatorPair pair = extremal_equality_pair(theta, params.pad);
    const InequalityMargin m = check_extremal_support_inequality(pair.u, pair.v, cfg);
    if (m.is_equality_case) ++equalities;
    Json e;
    e["theta"] = theta;
    e["d"] = (pair.u - pair.v).norm();
    e["expected_d"] = 2.0 * std::sin(theta / 2.0);
    e["expected_lhs"] = std::sin(theta);
    e["check"] = margin_json(m);
    e["u"] = to_json(pair.u);
    e["v"] = to_json(pair.v);
    entries.push_back(std::move(e));
  }
  Json j;
  j["gallery"] = "thm7_sharpness";
  j["points"] = params.points;
  j["pad"] = params.pad;
  j["equality_cases"] = equalities;
  j["entries"] = std::move(entries);
  return j;
}

Json projection_equality_gallery(const GalleryParams& params, const ToleranceConfig& cfg) {
  Json entries = Json::array();
  std::size_t equalities = 0;
  for (std::size_t i = 1; i <= params.points; ++i) {
    const double theta = static_cast<double>(i) * (std::numbers::pi / 2) / static_cast<double>(params.points);
    const double c = std::cos(theta), s = std::sin(theta);
    ComplexMatrix p{{1.0, 0.0}, {0.0, 0.0}};
    ComplexMatrix q{{c * c, c * s}, {c * s, s * s}};
    if (params.pad > 0) {
      p = ComplexMatrix::direct_sum(p, ComplexMatrix::identity(params.pad));
      q = ComplexMatrix::direct_sum(q, ComplexMatrix::identity(params.pad));
    }
    const InequalityMargin m = check_support_inequality(BlockOperator(p), BlockOperator(q), cfg);
    if (m.is_equality_case) ++equalities;
    Json e;
    e["theta"] = theta;
    e["expected_distance"] = s;
    e["check"] = margin_json(m);
    e["p"] = to_json(p);
    e["q"] = to_json(q);
    entries.push_back(std::move(e));
  }
  Json j;
  j["gallery"] = "thm1_equality";
  j["points"] = params.points;
  j["pad"] = params.pad;
  j["equality_cases"] = equalities;
  j["entries"] = std::move(entries);
  return j;
}

template <typename F>
Json outcome_of(F&& build) {
  try {
    build();
    return "constructed";
  } catch (const Error& e) {
    return std::string(to_string(e.kind()));
  }
}

Json counterexample_gallery(const ToleranceConfig& cfg) {
  Json entries = Json::array();
  {
    const BlockOperator u(ComplexMatrix(2, 2));
    const BlockOperator v(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
    const HomotopyObstruction ob = find_homotopy_obstruction(u, v, cfg);
    Json e;
    e["name"] = "zero_and_nonzero";
    e["note"] = "u = 0 and v != 0 lie at distance one and carry different ranks";
    e["u"] = to_json(u);
    e["v"] = to_json(v);
    e["distance"] = (u - v).norm();
    e["obstruction"] = std::string(to_string(ob.kind));
    e["obstruction_block"] = ob.block ? Json(*ob.block) : Json(nullptr);
    e["path_outcome"] = outcome_of([&] { partial_isometry_path(u, v, kPathResolution, cfg); });
    entries.push_back(std::move(e));
  }
  {
    const BlockOperator u(ComplexMatrix{{1.0, 0.0}});
    const BlockOperator v(ComplexMatrix{{-1.0, 0.0}});
    Json e;
    e["name"] = "antipodal_extremal";
    e["note"] = "extremal pair at distance two; the polar segment passes through zero";
    e["u"] = to_json(u);
    e["v"] = to_json(v);
    e["distance"] = (u - v).norm();
    e["obstruction"] = std::string(to_string(find_homotopy_obstruction(u, v, cfg).kind));
    e["path_outcome"] = outcome_of([&] { extremal_path(u, v, kPathResolution, cfg); });
    entries.push_back(std::move(e));
  }
  {
    const BlockOperator a(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
    const ContinuityReport report = continuity_criterion(a, cfg);
    Json e;
    e["name"] = "polar_discontinuity";
    e["note"] = "both defects of a are nonzero; u(a + t b) stays at distance one from u(a)";
    e["a"] = to_json(a);
    e["report"] = to_json(report);
    entries.push_back(std::move(e));
  }
  Json j;
  j["gallery"] = "counterexamples";
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace

Json build_gallery(GalleryKind kind, const GalleryParams& params, const ToleranceConfig& cfg) {
  params.validate();
  cfg.validate();
  switch (kind) {
    case GalleryKind::kExtremalSharpness: return sharpness_gallery(params, cfg);
    case GalleryKind::kProjectionEquality: return projection_equality_gallery(params, cfg);
    case GalleryKind::kCounterexamples: return counterexample_gallery(cfg);
  }
  return Json();
}

}  // namespace isometrica
