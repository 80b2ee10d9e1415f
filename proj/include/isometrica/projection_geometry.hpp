#pragma once

#include <vector>

#include "isometrica/matrix.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

/// Canonical form of a pair of projections (p, q) on one space.
///
/// Basis columns are ordered: ker p ∩ ker q, ker p ∩ ran q, ran p ∩ ker q,
/// ran p ∩ ran q, then one (e1, e2) pair per principal angle. On each pair p
/// acts as [[1, 0], [0, 0]] and q as [[cos^2, cos sin], [cos sin, sin^2]].
struct FivePartDecomposition {
  ComplexMatrix basis;
  std::size_t d00 = 0;
  std::size_t d01 = 0;
  std::size_t d10 = 0;
  std::size_t d11 = 0;
  std::vector<double> angles;  // ascending, each in (0, pi/2)
  double reconstruction_residual = 0.0;

  std::size_t dimension() const { return d00 + d01 + d10 + d11 + 2 * angles.size(); }
  ComplexMatrix canonical_p() const;
  /// Canonical q with the given angles substituted for the generic part.
  ComplexMatrix canonical_q(const std::vector<double>& generic_angles) const;
  ComplexMatrix canonical_q() const { return canonical_q(angles); }
};

/// Angles within eig_tol of 0 or pi/2 are absorbed into the corner subspaces.
FivePartDecomposition five_part_decomposition(const ComplexMatrix& p, const ComplexMatrix& q,
                                              const ToleranceConfig& cfg = {});

/// ||p - q|| read off the canonical form: 1 if a cross corner is present,
/// otherwise the sine of the largest angle.
double projection_distance(const ComplexMatrix& p, const ComplexMatrix& q, const ToleranceConfig& cfg = {});

struct ConnectingIsometry {
  ComplexMatrix r;  // polar part of p_to * p_from
  /// Lipschitz constant of p_from -> r under perturbations of norm below 0.1.
  double perturbation_constant = 0.0;
};

/// Partial isometry r with r* r = p_from and r r* = p_to. Throws TooFar unless
/// ||p_from - p_to|| < 1 - rank_tol.
ConnectingIsometry connecting_partial_isometry(const ComplexMatrix& p_from, const ComplexMatrix& p_to,
                                               const ToleranceConfig& cfg = {});

struct CappedAngles {
  ComplexMatrix q_capped;
  ComplexMatrix w;  // w* w = q_capped, w w* = q
  bool capped = false;  // false: every angle was already at most the cap
  double max_angle = 0.0;
  double bound = 0.0;  // 2 sin((max_angle - cap) / 2), or 0 when uncapped
};

/// Replaces every principal angle above `cap` by `cap`.
CappedAngles cap_angles(const ComplexMatrix& p, const ComplexMatrix& q, double cap,
                        const ToleranceConfig& cfg = {});

/// Continuous path of projections g(t) = w_t p w_t* from p to q, with w_t the
/// unitary polar part of (1 - t) + t z and z = q p + (1 - q)(1 - p).
class ProjectionRotation {
 public:
  /// Throws NotProjection or TooFar (||p - q|| >= 1 - rank_tol).
  ProjectionRotation(ComplexMatrix p, ComplexMatrix q, const ToleranceConfig& cfg = {});

  /// g(t); exact p at t = 0 and exact q at t = 1.
  ComplexMatrix at(double t) const;
  const ComplexMatrix& from() const { return p_; }
  const ComplexMatrix& to() const { return q_; }

 private:
  ComplexMatrix p_;
  ComplexMatrix q_;
  ComplexMatrix z_;
  ToleranceConfig cfg_;
};

struct ProjectionPath {
  std::vector<double> t;
  std::vector<ComplexMatrix> samples;
  double max_distance_to_target = 0.0;  // max_t ||g(t) - q||
  double max_step = 0.0;
  double max_projection_residual = 0.0;
};

/// Uniformly sampled projection path with per-sample verification. Throws
/// TooFar, NotProjection or StepTooLarge (raise n_samples).
ProjectionPath projection_path(const ComplexMatrix& p, const ComplexMatrix& q, std::size_t n_samples,
                               const ToleranceConfig& cfg = {});

}  // namespace isometrica
