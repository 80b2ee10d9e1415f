#pragma once

#include <span>

#include "isometrica/block_operator.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

inline constexpr double kEqualityTolerance = 1e-8;

struct InequalityMargin {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool is_equality_case = false;
};

InequalityMargin make_margin(double lhs, double rhs);

/// ||u*u - v*v|| against ||u - v|| for partial isometries.
InequalityMargin check_support_inequality(const BlockOperator& u, const BlockOperator& v,
                                          const ToleranceConfig& cfg = {});

/// d (1 - d^2/4)^(1/2); increasing on [0, sqrt 2], decreasing on [sqrt 2, 2].
double extremal_support_bound(double d);

/// ||u*u - v*v|| against extremal_support_bound(||u - v||) for extremal
/// partial isometries. Throws NotExtremal, or OutOfRange when ||u - v|| > sqrt 2.
InequalityMargin check_extremal_support_inequality(const BlockOperator& u, const BlockOperator& v,
                                                   const ToleranceConfig& cfg = {});

struct OperatorPair {
  BlockOperator u;
  BlockOperator v;
};

/// Co-isometries (1 + pad) x (2 + pad) with ||u - v|| = 2 sin(theta/2) and
/// ||u*u - v*v|| = sin(theta): u = h x f (+) 1, v = h x g (+) 1, (f, g) = cos(theta).
OperatorPair extremal_equality_pair(double theta, std::size_t pad);

/// Larger eigenvalue of (g x e1 - h x k)*(g x e1 - h x k) in the basis
/// (e1, e2), with k = cos(phi) e1 + sin(phi) e2 and (g, h) = x + iy.
double rank_one_difference_top_eigenvalue(double phi, double x, double y);

struct RankOneMinimum {
  double closed_form = 0.0;  // sin(phi)
  double brute_force = 0.0;  // sqrt of the grid minimum of the top eigenvalue
  double minimizer_x = 0.0;
  double minimizer_y = 0.0;
  double grid_resolution = 0.0;  // spacing of the finest grid
};

/// Minimum over unit g, h of ||g x e1 - h x k|| by zooming grid search over
/// the disk x^2 + y^2 <= 1, next to the closed form. phi in (0, pi/2].
RankOneMinimum rank_one_minimum(double phi);

struct BoundShape {
  bool increasing_to_turn = true;    // nondecreasing on [0, sqrt 2]
  bool decreasing_after_turn = true;  // nonincreasing on [sqrt 2, 2]
  bool dominated_by_linear = true;    // bound(d) <= d on [0, sqrt 2]
  double max_value = 0.0;
  double argmax = 0.0;
  bool passed = false;
};

/// Requires sorted d values in [0, 2].
BoundShape check_bound_shape(std::span<const double> d_values);

}  // namespace isometrica
