#include "isometrica/polar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "isometrica/error.hpp"
#include "isometrica/linalg.hpp"

namespace isometrica {

namespace {

std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

constexpr double kNilpotencyTol = 1e-10;

struct BlockSvds {
  std::vector<SingularValueDecomposition> svds;
  double sigma_max = 0.0;
};

BlockSvds block_svds(const BlockOperator& a, const ToleranceConfig& cfg) {
  BlockSvds out;
  for (const auto& b : a.blocks()) {
    out.svds.push_back(svd(b, cfg));
    if (!out.svds.back().singulars.empty())
      out.sigma_max = std::max(out.sigma_max, out.svds.back().singulars.front());
  }
  return out;
}

SpectralGap gap_from_svds(const BlockSvds& s, const ToleranceConfig& cfg) {
  SpectralGap out;
  const double cutoff = cfg.rank_tol * s.sigma_max;
  out.gap = std::numeric_limits<double>::infinity();
  for (const auto& d : s.svds) {
    std::size_t rank = 0;
    for (double sigma : d.singulars) {
      if (sigma > cutoff / 10.0 && sigma < cutoff * 10.0) {
        throw Error(ErrorKind::kIllConditioned,
                    "singular value " + format_sci(sigma) + " lies in the guard band around cutoff " +
                        format_sci(cutoff));
      }
      if (sigma > cutoff) {
        ++rank;
        out.gap = std::min(out.gap, sigma);
      }
    }
    out.rank.push_back(rank);
  }
  if (s.sigma_max == 0.0) out.gap = 0.0;
  return out;
}

// Outer product sum sum_k x(:, k) y(:, k)* over the first `rank` columns.
ComplexMatrix partial_outer(const ComplexMatrix& x, const ComplexMatrix& y, std::size_t rank,
                            std::span<const double> weights = {}) {
  ComplexMatrix out(x.rows(), y.rows());
  for (std::size_t k = 0; k < rank; ++k) {
    const double w = weights.empty() ? 1.0 : weights[k];
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const Complex xi = x(i, k) * w;
      for (std::size_t j = 0; j < y.rows(); ++j) out(i, j) += xi * std::conj(y(j, k));
    }
  }
  return out;
}

void require_block_square(const BlockOperator& p, const char* what) {
  for (const auto& b : p.blocks())
    if (!b.is_square()) throw Error(ErrorKind::kShapeMismatch, std::string(what) + " must be square blockwise");
}

}  // namespace

SpectralGap spectral_gap(const BlockOperator& a, const ToleranceConfig& cfg) {
  return gap_from_svds(block_svds(a, cfg), cfg);
}

PolarData polar_decompose(const BlockOperator& a, const ToleranceConfig& cfg) {
  const BlockSvds s = block_svds(a, cfg);
  const SpectralGap g = gap_from_svds(s, cfg);

  std::vector<ComplexMatrix> u, modulus, left, right;
  for (std::size_t i = 0; i < a.block_count(); ++i) {
    const auto& d = s.svds[i];
    const std::size_t r = g.rank[i];
    u.push_back(partial_outer(d.left, d.right, r));
    modulus.push_back(partial_outer(d.right, d.right, r, d.singulars));
    left.push_back(partial_outer(d.left, d.left, r));
    right.push_back(partial_outer(d.right, d.right, r));
  }
  PolarData out{BlockOperator(std::move(u)), BlockOperator(std::move(modulus)),
                BlockOperator(std::move(left)), BlockOperator(std::move(right)), g.gap, g.rank};
  return out;
}

BlockOperator polar_part(const BlockOperator& a, const ToleranceConfig& cfg) {
  return polar_decompose(a, cfg).u;
}

BlockOperator relative_inverse(const BlockOperator& a, const BlockOperator& p, const BlockOperator& q,
                               const ToleranceConfig& cfg) {
  require_block_square(p, "p");
  require_block_square(q, "q");
  if (p.block_count() != a.block_count() || q.block_count() != a.block_count())
    throw Error(ErrorKind::kShapeMismatch, "relative_inverse block counts");

  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < a.block_count(); ++i) {
    const ComplexMatrix& ai = a.block(i);
    if (p.block(i).rows() != ai.rows() || q.block(i).rows() != ai.cols())
      throw Error(ErrorKind::kShapeMismatch, "relative_inverse projection sizes");
    const ComplexMatrix pb = projection_range_basis(p.block(i), cfg);
    const ComplexMatrix qb = projection_range_basis(q.block(i), cfg);
    if (pb.cols() != qb.cols()) {
      throw Error(ErrorKind::kCornerSingular, "block " + std::to_string(i) + ": rank p = " +
                                                  std::to_string(pb.cols()) + ", rank q = " +
                                                  std::to_string(qb.cols()));
    }
    if (pb.cols() == 0) {
      blocks.emplace_back(ai.cols(), ai.rows());
      continue;
    }
    // Compressed corner: maps coordinates of ran q to coordinates of ran p.
    const ComplexMatrix corner = pb.adjoint() * ai * qb;
    const auto d = svd(corner, cfg);
    const double sigma_max = d.singulars.front();
    const double sigma_min = d.singulars.back();
    if (!(sigma_min > cfg.rank_tol * std::max(sigma_max, 1.0))) {
      throw Error(ErrorKind::kCornerSingular,
                  "block " + std::to_string(i) + ": corner smallest singular value " + std::to_string(sigma_min));
    }
    std::vector<double> inv(d.singulars.size());
    for (std::size_t k = 0; k < inv.size(); ++k) inv[k] = 1.0 / d.singulars[k];
    // corner^{-1} = V diag(1/sigma) U*
    const ComplexMatrix corner_inv = partial_outer(d.right, d.left, inv.size(), inv);
    blocks.push_back(qb * corner_inv * pb.adjoint());
  }
  return BlockOperator(std::move(blocks));
}

AlignedOperator align_left_support(const BlockOperator& a, const BlockOperator& p0,
                                   const BlockOperator& s) {
  const BlockOperator n = p0 * a * s;
  AlignedOperator out;
  out.nilpotency_residual = (n * n).norm();
  if (out.nilpotency_residual > kNilpotencyTol) {
    throw Error(ErrorKind::kNotNilpotent,
                "||(p0 a s)^2|| = " + std::to_string(out.nilpotency_residual));
  }
  out.b = (BlockOperator::left_identity(a.shape()) - n) * a;
  out.distance = (out.b - a).norm();
  out.distance_bound = (p0 * a).norm() * s.norm() * a.norm();
  return out;
}

}  // namespace isometrica

namespace isometrica {

ComplexMatrix polar_part(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  return polar_decompose(BlockOperator(a), cfg).u.block(0);
}

}  // namespace isometrica
