#include "isometrica/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "isometrica/error.hpp"

namespace isometrica {

void ToleranceConfig::validate() const {
  if (!(rank_tol > 0.0 && rank_tol < 1.0))
    throw Error(ErrorKind::kInvalidArgument, "rank_tol must lie in (0, 1)");
  if (!(iso_tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "iso_tol must be positive");
  if (!(eig_tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "eig_tol must be positive");
  if (!(path_step_max > 0.0))
    throw Error(ErrorKind::kInvalidArgument, "path_step_max must be positive");
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) {
  ComplexMatrix out = h + h.adjoint();
  out *= 0.5;
  return out;
}

namespace {

constexpr int kSweepBudget = 100;

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p, q) with the unitary G = diag(1, conj(phase)) * [[c, s], [-s, c]].
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const Complex phase = apq / b;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * b);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex g00 = c;
  const Complex g01 = s;
  const Complex g10 = -std::conj(phase) * s;
  const Complex g11 = std::conj(phase) * c;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * g00 + akq * g10;
    a(k, q) = akp * g01 + akq * g11;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
    a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * g00 + vkq * g10;
    v(k, q) = vkp * g01 + vkq * g11;
  }
}

// Orthogonalizes x against the first `count` columns of q (two passes).
void orthogonalize(ComplexVector& x, const ComplexMatrix& q, std::size_t count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < count; ++j) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < q.rows(); ++i) proj += std::conj(q(i, j)) * x[i];
      for (std::size_t i = 0; i < q.rows(); ++i) x[i] -= proj * q(i, j);
    }
  }
}

// SVD for rows >= cols.
SingularValueDecomposition tall_svd(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ComplexMatrix gram = a.adjoint() * a;
  // Exact Hermitian symmetry so the eigensolver precondition is not at the mercy of rounding.
  for (std::size_t i = 0; i < n; ++i) {
    gram(i, i) = gram(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
      gram(i, j) = avg;
      gram(j, i) = std::conj(avg);
    }
  }
  const EigenDecomposition eig = hermitian_eig(gram, cfg);
  const ComplexMatrix w = a * eig.basis;

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm(w.column(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SingularValueDecomposition out;
  out.right = eig.basis.columns(order);
  out.singulars.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.singulars[k] = sigma[order[k]];

  out.left = ComplexMatrix(m, m);
  const double sigma_max = n == 0 ? 0.0 : out.singulars[0];
  const double negligible =
      sigma_max * static_cast<double>(std::max<std::size_t>(m, 1)) * std::numeric_limits<double>::epsilon();
  std::size_t filled = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (out.singulars[k] <= negligible) break;
    ComplexVector x = w.column(order[k]);
    for (auto& z : x) z /= out.singulars[k];
    orthogonalize(x, out.left, filled);
    const double len = norm(x);
    if (len < 0.5) break;
    for (auto& z : x) z /= len;
    out.left.set_column(filled++, x);
  }
  // Complete with the standard basis vector that keeps the most mass after projection.
  while (filled < m) {
    ComplexVector best;
    double best_len = -1.0;
    for (std::size_t e = 0; e < m; ++e) {
      ComplexVector x(m);
      x[e] = 1.0;
      orthogonalize(x, out.left, filled);
      const double len = norm(x);
      if (len > best_len + 1e-12) {
        best_len = len;
        best = std::move(x);
      }
    }
    for (auto& z : best) z /= best_len;
    out.left.set_column(filled++, best);
  }
  return out;
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& h, const ToleranceConfig& cfg) {
  if (!h.is_square()) throw Error(ErrorKind::kNotHermitian, "matrix is not square");
  const std::size_t n = h.rows();
  const double scale = h.frobenius_norm();
  if ((h - h.adjoint()).frobenius_norm() > cfg.iso_tol * scale) {
    throw Error(ErrorKind::kNotHermitian, "||h - h*|| exceeds iso_tol * ||h||");
  }

  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = cfg.eig_tol * scale;

  int sweeps = 0;
  while (off_diagonal_mass(a) > threshold) {
    if (sweeps == kSweepBudget) {
      throw Error(ErrorKind::kNoConvergence, "Jacobi sweep budget exhausted");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweeps;
  }
  // Off-diagonal mass eig_tol * ||h|| still mixes eigenvectors of eigenvalues
  // much smaller than ||h||; quadratic convergence makes polishing cheap.
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  for (int extra = 0; extra < 2 && off_diagonal_mass(a) > floor; ++extra) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]).real();
  out.basis = v.columns(order);
  out.sweeps = sweeps;
  return out;
}

SingularValueDecomposition svd(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  if (a.rows() >= a.cols()) return tall_svd(a, cfg);
  SingularValueDecomposition t = tall_svd(a.adjoint(), cfg);
  return {std::move(t.right), std::move(t.singulars), std::move(t.left)};
}

double op_norm(const ComplexMatrix& a) {
  if (a.empty() || a.max_abs() == 0.0) return 0.0;
  const auto s = svd(a);
  return s.singulars.empty() ? 0.0 : s.singulars.front();
}

ComplexMatrix fun_calc(const ComplexMatrix& h, const std::function<double(double)>& f,
                       const ToleranceConfig& cfg) {
  const EigenDecomposition eig = hermitian_eig(h, cfg);
  const std::size_t n = h.rows();
  ComplexMatrix scaled = eig.basis;
  for (std::size_t j = 0; j < n; ++j) {
    const double fj = f(eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return scaled * eig.basis.adjoint();
}

ComplexMatrix projection_range_basis(const ComplexMatrix& p, const ToleranceConfig& cfg) {
  const EigenDecomposition eig = hermitian_eig(hermitian_part(p), cfg);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] > 0.5) keep.push_back(k);
  return eig.basis.columns(keep);
}

bool is_projection(const ComplexMatrix& p, const ToleranceConfig& cfg) {
  if (!p.is_square()) return false;
  return op_norm(p - p.adjoint()) <= cfg.iso_tol && op_norm(p * p - p) <= cfg.iso_tol;
}

}  // namespace isometrica
