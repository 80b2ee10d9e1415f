#pragma once

namespace isometrica {

/// Numerical thresholds shared by every module.
///
/// rank_tol is relative to the largest singular value of the operator being
/// ranked; the other fields are absolute bounds on residual norms.
struct ToleranceConfig {
  double rank_tol = 1e-9;
  double iso_tol = 1e-8;
  double eig_tol = 1e-12;
  double path_step_max = 0.1;

  /// Throws Error(kInvalidArgument) unless all fields are positive and rank_tol < 1.
  void validate() const;
};

}  // namespace isometrica
