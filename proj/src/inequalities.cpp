#include "isometrica/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "isometrica/error.hpp"
#include "isometrica/linalg.hpp"

namespace isometrica {

namespace {

constexpr std::size_t kGridPoints = 200;
constexpr double kZoom = 10.0;
constexpr double kFinestResolution = 1e-9;

void require_partial_isometry(const BlockOperator& w, const char* name, const ToleranceConfig& cfg) {
  const auto check = is_partial_isometry(w, cfg);
  if (!check.ok) {
    throw Error(ErrorKind::kNotPartialIsometry,
                std::string(name) + " has residual " + std::to_string(check.residual));
  }
}

double support_gap(const BlockOperator& u, const BlockOperator& v) {
  return (u.adjoint() * u - v.adjoint() * v).norm();
}

}  // namespace

InequalityMargin make_margin(double lhs, double rhs) {
  const double margin = rhs - lhs;
  return {lhs, rhs, margin, std::abs(margin) <= kEqualityTolerance};
}

InequalityMargin check_support_inequality(const BlockOperator& u, const BlockOperator& v,
                                          const ToleranceConfig& cfg) {
  if (!(u.shape() == v.shape())) throw Error(ErrorKind::kShapeMismatch, "operands differ in shape");
  require_partial_isometry(u, "u", cfg);
  require_partial_isometry(v, "v", cfg);
  return make_margin(support_gap(u, v), (u - v).norm());
}

double extremal_support_bound(double d) { return d * std::sqrt(std::max(0.0, 1.0 - d * d / 4.0)); }

InequalityMargin check_extremal_support_inequality(const BlockOperator& u, const BlockOperator& v,
                                                   const ToleranceConfig& cfg) {
  if (!(u.shape() == v.shape())) throw Error(ErrorKind::kShapeMismatch, "operands differ in shape");
  if (!is_extremal(u, cfg)) throw Error(ErrorKind::kNotExtremal, "u is not extremal");
  if (!is_extremal(v, cfg)) throw Error(ErrorKind::kNotExtremal, "v is not extremal");
  const double d = (u - v).norm();
  if (d > std::numbers::sqrt2 + 1e-12) {
    throw Error(ErrorKind::kOutOfRange, "||u - v|| = " + std::to_string(d) + " exceeds sqrt(2)");
  }
  return make_margin(support_gap(u, v), extremal_support_bound(d));
}

OperatorPair extremal_equality_pair(double theta, std::size_t pad) {
  const ComplexMatrix u0{{1.0, 0.0}};
  const ComplexMatrix v0{{std::cos(theta), std::sin(theta)}};
  const ComplexMatrix one = ComplexMatrix::identity(pad);
  if (pad == 0) return {BlockOperator(u0), BlockOperator(v0)};
  return {BlockOperator(ComplexMatrix::direct_sum(u0, one)), BlockOperator(ComplexMatrix::direct_sum(v0, one))};
}

double rank_one_difference_top_eigenvalue(double phi, double x, double y) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double a = 1.0 + c * c - 2.0 * x * c;
  const double d = s * s;
  const Complex b = c * s - Complex(x, y) * s;  // lower-left entry
  const double half_trace = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  return half_trace + std::sqrt(half_gap * half_gap + std::norm(b));
}

RankOneMinimum rank_one_minimum(double phi) {
  if (!(phi > 0.0 && phi <= std::numbers::pi / 2))
    throw Error(ErrorKind::kInvalidArgument, "phi must lie in (0, pi/2]");
  RankOneMinimum out;
  out.closed_form = std::sin(phi);

  double cx = 0.0, cy = 0.0, half_width = 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    const double spacing = 2.0 * half_width / static_cast<double>(kGridPoints - 1);
    double bx = cx, by = cy;
    for (std::size_t i = 0; i < kGridPoints; ++i) {
      const double x = cx - half_width + spacing * static_cast<double>(i);
      for (std::size_t j = 0; j < kGridPoints; ++j) {
        const double y = cy - half_width + spacing * static_cast<double>(j);
        if (x * x + y * y > 1.0) continue;
        const double value = rank_one_difference_top_eigenvalue(phi, x, y);
        if (value < best) {
          best = value;
          bx = x;
          by = y;
        }
      }
    }
    cx = bx;
    cy = by;
    out.grid_resolution = spacing;
    if (spacing <= kFinestResolution) break;
    half_width /= kZoom;
  }
  out.brute_force = std::sqrt(best);
  out.minimizer_x = cx;
  out.minimizer_y = cy;
  return out;
}

BoundShape check_bound_shape(std::span<const double> d_values) {
  if (!std::is_sorted(d_values.begin(), d_values.end()))
    throw Error(ErrorKind::kInvalidArgument, "d values must be sorted");
  BoundShape out;
  const double turn = std::numbers::sqrt2;
  for (std::size_t i = 0; i < d_values.size(); ++i) {
    const double d = d_values[i];
    if (d < 0.0 || d > 2.0) throw Error(ErrorKind::kInvalidArgument, "d values must lie in [0, 2]");
    const double b = extremal_support_bound(d);
    if (b > out.max_value) {
      out.max_value = b;
      out.argmax = d;
    }
    if (d <= turn && b > d) out.dominated_by_linear = false;
    if (i == 0) continue;
    const double prev_d = d_values[i - 1];
    const double prev_b = extremal_support_bound(prev_d);
    if (d <= turn && b < prev_b) out.increasing_to_turn = false;
    if (prev_d >= turn && b > prev_b) out.decreasing_after_turn = false;
  }
  out.passed = out.increasing_to_turn && out.decreasing_after_turn && out.dominated_by_linear;
  return out;
}

}  // namespace isometrica
