#include "isometrica/projection_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "isometrica/error.hpp"
#include "isometrica/linalg.hpp"
#include "isometrica/polar.hpp"

namespace isometrica {

namespace {

void require_projection_pair(const ComplexMatrix& p, const ComplexMatrix& q, const ToleranceConfig& cfg) {
  if (!p.is_square() || !q.is_square() || p.rows() != q.rows())
    throw Error(ErrorKind::kNotProjection, "projections must be square of equal size");
  if (!is_projection(p, cfg)) throw Error(ErrorKind::kNotProjection, "p is not a projection");
  if (!is_projection(q, cfg)) throw Error(ErrorKind::kNotProjection, "q is not a projection");
}

void append_columns(ComplexMatrix& dst, std::size_t& at, const std::vector<ComplexVector>& cols) {
  for (const auto& c : cols) dst.set_column(at++, c);
}

// Writes the 2x2 cell [[a, b], [c, d]] at offset k.
void put_cell(ComplexMatrix& m, std::size_t k, double a, double b, double c, double d) {
  m(k, k) = a;
  m(k, k + 1) = b;
  m(k + 1, k) = c;
  m(k + 1, k + 1) = d;
}

}  // namespace

ComplexMatrix FivePartDecomposition::canonical_p() const {
  ComplexMatrix m(dimension(), dimension());
  for (std::size_t i = d00 + d01; i < d00 + d01 + d10 + d11; ++i) m(i, i) = 1.0;
  std::size_t k = d00 + d01 + d10 + d11;
  for (std::size_t a = 0; a < angles.size(); ++a, k += 2) put_cell(m, k, 1.0, 0.0, 0.0, 0.0);
  return m;
}

ComplexMatrix FivePartDecomposition::canonical_q(const std::vector<double>& generic_angles) const {
  if (generic_angles.size() != angles.size())
    throw Error(ErrorKind::kShapeMismatch, "angle count differs from the decomposition");
  ComplexMatrix m(dimension(), dimension());
  for (std::size_t i = d00; i < d00 + d01; ++i) m(i, i) = 1.0;
  for (std::size_t i = d00 + d01 + d10; i < d00 + d01 + d10 + d11; ++i) m(i, i) = 1.0;
  std::size_t k = d00 + d01 + d10 + d11;
  for (double theta : generic_angles) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    put_cell(m, k, c * c, c * s, c * s, s * s);
    k += 2;
  }
  return m;
}

FivePartDecomposition five_part_decomposition(const ComplexMatrix& p, const ComplexMatrix& q,
                                              const ToleranceConfig& cfg) {
  require_projection_pair(p, q, cfg);
  const std::size_t n = p.rows();

  // One eigendecomposition of p yields orthonormal bases of ran p and ker p.
  const EigenDecomposition pe = hermitian_eig(hermitian_part(p), cfg);
  std::vector<std::size_t> range_idx, kernel_idx;
  for (std::size_t k = 0; k < n; ++k) (pe.values[k] > 0.5 ? range_idx : kernel_idx).push_back(k);
  const ComplexMatrix range_basis = pe.basis.columns(range_idx);
  const ComplexMatrix kernel_basis = pe.basis.columns(kernel_idx);

  std::vector<ComplexVector> h10, h11, e1s, e2s;
  std::vector<double> angles;
  if (!range_idx.empty()) {
    const ComplexMatrix compressed = range_basis.adjoint() * q * range_basis;
    const EigenDecomposition ce = hermitian_eig(hermitian_part(compressed), cfg);
    for (std::size_t j = 0; j < range_idx.size(); ++j) {
      const ComplexVector e1 = range_basis * ce.basis.column(j);
      const ComplexVector qe1 = q * e1;
      const double cos_theta = std::min(1.0, norm(qe1));
      // Component of q e1 in ker p has length cos(theta) sin(theta).
      const ComplexVector off = kernel_basis.cols() == 0 ? ComplexVector{}
                                                         : kernel_basis.adjoint() * qe1;
      const double cross = off.empty() ? 0.0 : norm(off);
      double theta;
      if (cos_theta < std::numbers::sqrt2 / 2) {
        theta = std::acos(cos_theta);
      } else {
        theta = std::asin(std::min(1.0, cross / cos_theta));
      }
      if (theta <= cfg.eig_tol) {
        h11.push_back(e1);
      } else if (theta >= std::numbers::pi / 2 - cfg.eig_tol) {
        h10.push_back(e1);
      } else {
        ComplexVector e2 = kernel_basis * off;
        for (auto& z : e2) z /= cross;
        e1s.push_back(e1);
        e2s.push_back(std::move(e2));
        angles.push_back(theta);
      }
    }
  }

  // Inside ker p, the orthogonal complement of the e2 directions splits into
  // ker q and ran q.
  std::vector<ComplexVector> h00, h01;
  if (!kernel_idx.empty()) {
    const std::size_t m = kernel_idx.size();
    const std::size_t k = e2s.size();
    ComplexMatrix complement = ComplexMatrix::identity(m);
    if (k > 0) {
      // Clustered angles leave the e2 directions orthonormal only to roughly
      // eig_tol / cluster gap; snap them to the nearest isometry.
      ComplexMatrix coords(m, k);
      for (std::size_t j = 0; j < k; ++j) coords.set_column(j, kernel_basis.adjoint() * e2s[j]);
      coords = polar_part(coords, cfg);
      for (std::size_t j = 0; j < k; ++j) e2s[j] = kernel_basis * coords.column(j);
      complement -= coords * coords.adjoint();
    }
    // The complement has rank m - k by construction, so select by count.
    const EigenDecomposition ke = hermitian_eig(hermitian_part(complement), cfg);
    std::vector<std::size_t> top(m - std::min(m, k));
    std::iota(top.begin(), top.end(), 0);
    const ComplexMatrix rest = kernel_basis * ke.basis.columns(top);
    if (rest.cols() > 0) {
      const ComplexMatrix compressed = rest.adjoint() * q * rest;
      const EigenDecomposition de = hermitian_eig(hermitian_part(compressed), cfg);
      for (std::size_t j = 0; j < rest.cols(); ++j) {
        ComplexVector v = rest * de.basis.column(j);
        (de.values[j] > 0.5 ? h01 : h00).push_back(std::move(v));
      }
    }
  }

  FivePartDecomposition out;
  out.d00 = h00.size();
  out.d01 = h01.size();
  out.d10 = h10.size();
  out.d11 = h11.size();
  out.angles = angles;
  if (out.dimension() != n) {
    throw Error(ErrorKind::kIllConditioned, "corner classification lost dimensions (" +
                                                std::to_string(out.dimension()) + " of " + std::to_string(n) + ")");
  }
  out.basis = ComplexMatrix(n, n);
  std::size_t at = 0;
  append_columns(out.basis, at, h00);
  append_columns(out.basis, at, h01);
  append_columns(out.basis, at, h10);
  append_columns(out.basis, at, h11);
  // The compressed eigensolver sorts cos^2 descending, so angles come out ascending.
  for (std::size_t a = 0; a < angles.size(); ++a) {
    out.basis.set_column(at++, e1s[a]);
    out.basis.set_column(at++, e2s[a]);
  }
  const ComplexMatrix b = out.basis;
  const ComplexMatrix ba = b.adjoint();
  out.reconstruction_residual = std::max(op_norm(b * out.canonical_p() * ba - p),
                                         op_norm(b * out.canonical_q() * ba - q));
  return out;
}

double projection_distance(const ComplexMatrix& p, const ComplexMatrix& q, const ToleranceConfig& cfg) {
  const FivePartDecomposition d = five_part_decomposition(p, q, cfg);
  if (d.d01 > 0 || d.d10 > 0) return 1.0;
  double dist = 0.0;
  for (double theta : d.angles) dist = std::max(dist, std::sin(theta));
  return dist;
}

ConnectingIsometry connecting_partial_isometry(const ComplexMatrix& p_from, const ComplexMatrix& p_to,
                                               const ToleranceConfig& cfg) {
  require_projection_pair(p_from, p_to, cfg);
  const double dist = op_norm(p_to - p_from);
  if (dist >= 1.0 - cfg.rank_tol) {
    throw Error(ErrorKind::kTooFar, "||p_from - p_to|| = " + std::to_string(dist));
  }
  ConnectingIsometry out;
  out.r = polar_part(p_to * p_from, cfg);
  // Singular values of p_to p_from on ran p_from are the cosines of the
  // principal angles, so the smallest one is sqrt(1 - dist^2).
  const double sigma_min = std::sqrt(std::max(0.0, 1.0 - dist * dist));
  out.perturbation_constant = 4.0 / sigma_min;
  return out;
}

CappedAngles cap_angles(const ComplexMatrix& p, const ComplexMatrix& q, double cap,
                        const ToleranceConfig& cfg) {
  if (!(cap > 0.0 && cap < std::numbers::pi / 2))
    throw Error(ErrorKind::kInvalidArgument, "cap must lie in (0, pi/2)");
  const FivePartDecomposition d = five_part_decomposition(p, q, cfg);

  CappedAngles out;
  for (double theta : d.angles) out.max_angle = std::max(out.max_angle, theta);
  if (out.max_angle <= cap) {
    out.q_capped = q;
    out.w = q;
    return out;
  }
  out.capped = true;
  out.bound = 2.0 * std::sin((out.max_angle - cap) / 2.0);

  std::vector<double> capped_angles = d.angles;
  for (auto& theta : capped_angles) theta = std::min(theta, cap);

  // In each capped cell w = g_theta g_cap* with g_a = (cos a, sin a); elsewhere w = q.
  ComplexMatrix w = d.canonical_q();
  std::size_t k = d.d00 + d.d01 + d.d10 + d.d11;
  for (std::size_t a = 0; a < d.angles.size(); ++a, k += 2) {
    const double t = d.angles[a];
    const double c = capped_angles[a];
    w(k, k) = std::cos(t) * std::cos(c);
    w(k, k + 1) = std::cos(t) * std::sin(c);
    w(k + 1, k) = std::sin(t) * std::cos(c);
    w(k + 1, k + 1) = std::sin(t) * std::sin(c);
  }
  const ComplexMatrix ba = d.basis.adjoint();
  out.q_capped = d.basis * d.canonical_q(capped_angles) * ba;
  out.w = d.basis * w * ba;
  return out;
}

ProjectionRotation::ProjectionRotation(ComplexMatrix p, ComplexMatrix q, const ToleranceConfig& cfg)
    : p_(std::move(p)), q_(std::move(q)), cfg_(cfg) {
  require_projection_pair(p_, q_, cfg_);
  const double dist = op_norm(p_ - q_);
  if (dist >= 1.0 - cfg_.rank_tol) throw Error(ErrorKind::kTooFar, "||p - q|| = " + std::to_string(dist));
  const ComplexMatrix one = ComplexMatrix::identity(p_.rows());
  z_ = q_ * p_ + (one - q_) * (one - p_);
}

ComplexMatrix ProjectionRotation::at(double t) const {
  if (t <= 0.0) return p_;
  const std::size_t n = p_.rows();
  ComplexMatrix m = z_;
  m *= t;
  m += (1.0 - t) * ComplexMatrix::identity(n);
  const ComplexMatrix w = polar_part(m, cfg_);
  ComplexMatrix g = w * p_ * w.adjoint();
  if (t >= 1.0 && op_norm(g - q_) <= cfg_.iso_tol) return q_;
  return g;
}

ProjectionPath projection_path(const ComplexMatrix& p, const ComplexMatrix& q, std::size_t n_samples,
                               const ToleranceConfig& cfg) {
  if (n_samples < 2) throw Error(ErrorKind::kInvalidArgument, "a path needs at least two samples");
  const ProjectionRotation rotation(p, q, cfg);
  ProjectionPath out;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = i + 1 == n_samples ? 1.0 : static_cast<double>(i) / static_cast<double>(n_samples - 1);
    ComplexMatrix g = rotation.at(t);
    const double residual = std::max(op_norm(g - g.adjoint()), op_norm(g * g - g));
    out.max_projection_residual = std::max(out.max_projection_residual, residual);
    if (residual > cfg.iso_tol) {
      throw Error(ErrorKind::kNotProjection, "sample at t = " + std::to_string(t) + " has residual " +
                                                 std::to_string(residual));
    }
    const double to_target = op_norm(g - q);
    out.max_distance_to_target = std::max(out.max_distance_to_target, to_target);
    if (to_target >= 1.0) {
      throw Error(ErrorKind::kTooFar, "||g(t) - q|| reached " + std::to_string(to_target));
    }
    if (!out.samples.empty()) {
      const double step = op_norm(g - out.samples.back());
      out.max_step = std::max(out.max_step, step);
      if (step > cfg.path_step_max) {
        throw Error(ErrorKind::kStepTooLarge, "step " + std::to_string(step) + " exceeds path_step_max");
      }
    }
    out.t.push_back(t);
    out.samples.push_back(std::move(g));
  }
  return out;
}

}  // namespace isometrica
