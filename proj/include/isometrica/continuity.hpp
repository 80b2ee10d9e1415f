#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "isometrica/block_operator.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

/// Continuity of a -> u(a) at a.
///
/// Every finite-dimensional operator has closed range, so the criterion reads
/// p0 x q0 = 0 for all x: in each block either the left defect p0 or the right
/// defect q0 of a vanishes. When it fails, the witness b = p0 (xi x eta) q0 has
/// norm one and u(a + t b) stays at distance one from u(a) for every t > 0.
struct ContinuityReport {
  bool is_continuity_point = true;
  std::optional<BlockOperator> witness;
  std::optional<std::size_t> witness_block;
  double observed_jump = 0.0;                       // ||u(a + t b) - u(a)|| at t = 1e-3
  std::vector<std::pair<double, double>> gap_trace;  // (t, gap(a + t b))
};

ContinuityReport continuity_criterion(const BlockOperator& a, const ToleranceConfig& cfg = {});

/// (t, ||u(a + t b) - u(a)||) for each t. Throws BadWitness unless b is nonzero
/// and b = p0 b q0 for the defect projections of a.
std::vector<std::pair<double, double>> discontinuity_demo(const BlockOperator& a, const BlockOperator& b,
                                                          std::span<const double> t_values,
                                                          const ToleranceConfig& cfg = {});

struct FamilySample {
  double x = 0.0;
  BlockOperator f;
};

/// Three empirical readings of continuity of x -> u(f(x)) at x0, each taken
/// over the samples within `window` indices of x0:
///   polar_continuous    max ||u(x) - u(x0)|| < 1/2
///   support_continuous  max ||u(x)*u(x) - u(x0)*u(x0)|| < 1/2
///   gap_bounded         numerical rank constant, so the spectra of |f(x)|
///                       omit (0, min_gap)
/// A rank change forces both distances to at least one, so for sampling fine
/// enough the three verdicts agree; disagreement is reported, not thrown.
struct SampledContinuityReport {
  std::size_t x0_index = 0;
  std::vector<std::size_t> neighborhood;
  double polar_modulus = 0.0;
  double support_modulus = 0.0;
  double min_gap = 0.0;
  std::vector<std::pair<double, double>> gap_trace;  // (x, gap) for every sample
  std::vector<std::size_t> rank_jumps;              // i where rank(f(x_i)) != rank(f(x_{i+1}))
  bool polar_continuous = false;
  bool support_continuous = false;
  bool gap_bounded = false;
  bool verdicts_agree = false;
};

/// Throws StepTooLarge when consecutive family members differ by more than
/// path_step_max.
SampledContinuityReport sampled_continuity_experiment(std::span<const FamilySample> family,
                                                      std::size_t x0_index, const ToleranceConfig& cfg = {},
                                                      std::size_t window = 1);

struct OpennessProbe {
  bool passed = false;
  std::size_t trials_checked = 0;
  std::size_t trials_skipped = 0;  // perturbation changed the rank pattern
};

/// Random perturbations of norm at most `radius` of a continuity point stay
/// continuity points. Throws InvalidArgument if a is not a continuity point or
/// radius >= gap(a) / 2.
OpennessProbe continuity_openness_probe(const BlockOperator& a, double radius, std::size_t trials,
                                        std::uint64_t seed, const ToleranceConfig& cfg = {});

}  // namespace isometrica
