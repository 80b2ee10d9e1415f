#include "isometrica/continuity.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "isometrica/error.hpp"
#include "isometrica/polar.hpp"
#include "isometrica/rng.hpp"

namespace isometrica {

namespace {

constexpr double kJumpThreshold = 0.5;
constexpr std::array<double, 3> kTraceSteps = {1e-1, 1e-2, 1e-3};

// Normalized p e_k for the column of p with the largest norm, lowest index on ties.
ComplexVector top_direction(const ComplexMatrix& p) {
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t k = 0; k < p.cols(); ++k) {
    const double n = norm(p.column(k));
    if (n > best_norm + 1e-12) {
      best_norm = n;
      best = k;
    }
  }
  ComplexVector v = p.column(best);
  for (auto& z : v) z /= best_norm;
  return v;
}

struct Defects {
  BlockOperator p0;
  BlockOperator q0;
  std::vector<std::size_t> rank;
  BlockOperator u;
};

Defects defects_of(const BlockOperator& a, const ToleranceConfig& cfg) {
  PolarData pd = polar_decompose(a, cfg);
  return {BlockOperator::left_identity(a.shape()) - pd.left_support,
          BlockOperator::right_identity(a.shape()) - pd.right_support, pd.numerical_rank, std::move(pd.u)};
}

bool criterion_holds(const BlockShape& shape, const std::vector<std::size_t>& rank) {
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (rank[i] < shape.out_dim(i) && rank[i] < shape.in_dim(i)) return false;
  }
  return true;
}

}  // namespace

ContinuityReport continuity_criterion(const BlockOperator& a, const ToleranceConfig& cfg) {
  const Defects d = defects_of(a, cfg);
  ContinuityReport report;
  report.is_continuity_point = criterion_holds(a.shape(), d.rank);
  if (report.is_continuity_point) return report;

  std::size_t block = 0;
  while (d.rank[block] == a.shape().out_dim(block) || d.rank[block] == a.shape().in_dim(block)) ++block;
  const ComplexVector xi = top_direction(d.p0.block(block));
  const ComplexVector eta = top_direction(d.q0.block(block));
  BlockOperator b = BlockOperator::zero(a.shape());
  b.block(block) = ComplexMatrix::rank_one(xi, eta);

  for (double t : kTraceSteps) {
    const BlockOperator moved = a + t * b;
    report.gap_trace.emplace_back(t, polar_decompose(moved, cfg).gap);
  }
  report.observed_jump = (polar_part(a + kTraceSteps.back() * b, cfg) - d.u).norm();
  report.witness = std::move(b);
  report.witness_block = block;
  return report;
}

std::vector<std::pair<double, double>> discontinuity_demo(const BlockOperator& a, const BlockOperator& b,
                                                          std::span<const double> t_values,
                                                          const ToleranceConfig& cfg) {
  if (!(a.shape() == b.shape())) throw Error(ErrorKind::kShapeMismatch, "witness shape");
  const double b_norm = b.norm();
  if (b_norm == 0.0) throw Error(ErrorKind::kBadWitness, "witness is zero");
  const Defects d = defects_of(a, cfg);
  const double leak = (d.p0 * b * d.q0 - b).norm();
  if (leak > cfg.iso_tol * std::max(1.0, b_norm)) {
    throw Error(ErrorKind::kBadWitness, "||p0 b q0 - b|| = " + std::to_string(leak));
  }
  std::vector<std::pair<double, double>> out;
  for (double t : t_values) {
    if (!(t > 0.0)) throw Error(ErrorKind::kInvalidArgument, "t values must be positive");
    out.emplace_back(t, (polar_part(a + t * b, cfg) - d.u).norm());
  }
  return out;
}

SampledContinuityReport sampled_continuity_experiment(std::span<const FamilySample> family,
                                                      std::size_t x0_index, const ToleranceConfig& cfg,
                                                      std::size_t window) {
  if (x0_index >= family.size()) throw Error(ErrorKind::kInvalidArgument, "x0 index out of range");
  for (std::size_t i = 1; i < family.size(); ++i) {
    if (!(family[i].f.shape() == family[0].f.shape()))
      throw Error(ErrorKind::kShapeMismatch, "family members differ in shape");
    const double step = (family[i].f - family[i - 1].f).norm();
    if (step > cfg.path_step_max) {
      throw Error(ErrorKind::kStepTooLarge,
                  "family step " + std::to_string(i) + " has size " + std::to_string(step));
    }
  }

  std::vector<PolarData> polar;
  polar.reserve(family.size());
  SampledContinuityReport report;
  report.x0_index = x0_index;
  for (const auto& s : family) {
    polar.push_back(polar_decompose(s.f, cfg));
    report.gap_trace.emplace_back(s.x, polar.back().gap);
  }
  for (std::size_t i = 0; i + 1 < family.size(); ++i) {
    if (polar[i].numerical_rank != polar[i + 1].numerical_rank) report.rank_jumps.push_back(i);
  }

  const PolarData& base = polar[x0_index];
  const std::size_t lo = x0_index >= window ? x0_index - window : 0;
  const std::size_t hi = std::min(family.size() - 1, x0_index + window);
  report.min_gap = std::numeric_limits<double>::infinity();
  bool rank_constant = true;
  for (std::size_t i = lo; i <= hi; ++i) {
    report.neighborhood.push_back(i);
    report.polar_modulus = std::max(report.polar_modulus, (polar[i].u - base.u).norm());
    report.support_modulus =
        std::max(report.support_modulus, (polar[i].right_support - base.right_support).norm());
    report.min_gap = std::min(report.min_gap, polar[i].gap);
    if (polar[i].numerical_rank != base.numerical_rank) rank_constant = false;
  }
  report.polar_continuous = report.polar_modulus < kJumpThreshold;
  report.support_continuous = report.support_modulus < kJumpThreshold;
  report.gap_bounded = rank_constant && report.min_gap > 0.0;
  // The zero operator has gap 0 by convention yet omits every interval.
  if (rank_constant && std::all_of(report.neighborhood.begin(), report.neighborhood.end(), [&](std::size_t i) {
        const auto& r = polar[i].numerical_rank;
        return std::all_of(r.begin(), r.end(), [](std::size_t k) { return k == 0; });
      })) {
    report.gap_bounded = true;
  }
  report.verdicts_agree = report.polar_continuous == report.support_continuous &&
                          report.support_continuous == report.gap_bounded;
  return report;
}

OpennessProbe continuity_openness_probe(const BlockOperator& a, double radius, std::size_t trials,
                                        std::uint64_t seed, const ToleranceConfig& cfg) {
  const PolarData pd = polar_decompose(a, cfg);
  if (!criterion_holds(a.shape(), pd.numerical_rank)) {
    throw Error(ErrorKind::kInvalidArgument, "probe centre is not a continuity point");
  }
  if (!(radius > 0.0) || !(radius < pd.gap / 2.0)) {
    throw Error(ErrorKind::kInvalidArgument, "radius " + std::to_string(radius) +
                                                 " must lie in (0, gap / 2) with gap " + std::to_string(pd.gap));
  }
  OpennessProbe probe;
  probe.passed = true;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomStream rng(seed, trial);
    std::vector<ComplexMatrix> blocks;
    for (const auto& [out, in] : a.shape().blocks()) blocks.push_back(rng.gaussian_matrix(out, in));
    BlockOperator e(std::move(blocks));
    const double scale = radius * (1.0 - rng.uniform()) / e.norm();
    const BlockOperator moved = a + scale * e;
    const PolarData moved_pd = polar_decompose(moved, cfg);
    if (moved_pd.numerical_rank != pd.numerical_rank) {
      ++probe.trials_skipped;
      continue;
    }
    ++probe.trials_checked;
    if (!criterion_holds(moved.shape(), moved_pd.numerical_rank)) probe.passed = false;
  }
  return probe;
}

}  // namespace isometrica
