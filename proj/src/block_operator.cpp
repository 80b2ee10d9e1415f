#include "isometrica/block_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isometrica/error.hpp"
#include "isometrica/linalg.hpp"

namespace isometrica {

namespace {

void require_same_shape(const BlockOperator& a, const BlockOperator& b, const char* op) {
  if (!(a.shape() == b.shape())) throw Error(ErrorKind::kShapeMismatch, op);
}

std::size_t projection_rank(const ComplexMatrix& p) {
  return static_cast<std::size_t>(std::max(0.0, std::round(p.trace().real())));
}

// U_r V_r* from the top `rank` singular pairs.
ComplexMatrix truncated_unitary_factor(const ComplexMatrix& a, std::size_t rank) {
  const auto s = svd(a);
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        out(i, j) += s.left(i, k) * std::conj(s.right(j, k));
  return out;
}

}  // namespace

BlockShape::BlockShape(std::vector<std::pair<std::size_t, std::size_t>> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::kInvalidArgument, "block shape must be nonempty");
  for (const auto& [out, in] : blocks_) {
    if (out == 0 || in == 0)
      throw Error(ErrorKind::kInvalidArgument, "block dimensions must be at least 1");
  }
}

BlockShape BlockShape::adjoint() const {
  std::vector<std::pair<std::size_t, std::size_t>> flipped;
  flipped.reserve(blocks_.size());
  for (const auto& [out, in] : blocks_) flipped.emplace_back(in, out);
  return BlockShape(std::move(flipped));
}

BlockOperator::BlockOperator(std::vector<ComplexMatrix> blocks) : blocks_(std::move(blocks)) {
  std::vector<std::pair<std::size_t, std::size_t>> dims;
  dims.reserve(blocks_.size());
  for (const auto& b : blocks_) dims.emplace_back(b.rows(), b.cols());
  shape_ = BlockShape(std::move(dims));
}

BlockOperator::BlockOperator(ComplexMatrix block)
    : BlockOperator(std::vector<ComplexMatrix>{std::move(block)}) {}

BlockOperator BlockOperator::zero(const BlockShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& [out, in] : shape.blocks()) blocks.emplace_back(out, in);
  return BlockOperator(std::move(blocks));
}

BlockOperator BlockOperator::left_identity(const BlockShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& [out, in] : shape.blocks()) blocks.push_back(ComplexMatrix::identity(out));
  return BlockOperator(std::move(blocks));
}

BlockOperator BlockOperator::right_identity(const BlockShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& [out, in] : shape.blocks()) blocks.push_back(ComplexMatrix::identity(in));
  return BlockOperator(std::move(blocks));
}

BlockOperator BlockOperator::adjoint() const {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return BlockOperator(std::move(blocks));
}

double BlockOperator::norm() const {
  double n = 0.0;
  for (const auto& b : blocks_) n = std::max(n, op_norm(b));
  return n;
}

BlockOperator& BlockOperator::operator+=(const BlockOperator& rhs) {
  require_same_shape(*this, rhs, "block sum");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& rhs) {
  require_same_shape(*this, rhs, "block difference");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= rhs.blocks_[i];
  return *this;
}

BlockOperator& BlockOperator::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

BlockOperator operator+(BlockOperator lhs, const BlockOperator& rhs) { return lhs += rhs; }
BlockOperator operator-(BlockOperator lhs, const BlockOperator& rhs) { return lhs -= rhs; }
BlockOperator operator*(Complex s, BlockOperator a) { return a *= s; }

BlockOperator operator*(const BlockOperator& lhs, const BlockOperator& rhs) {
  if (lhs.block_count() != rhs.block_count())
    throw Error(ErrorKind::kShapeMismatch, "block products need equal block counts");
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(lhs.block_count());
  for (std::size_t i = 0; i < lhs.block_count(); ++i) blocks.push_back(lhs.block(i) * rhs.block(i));
  return BlockOperator(std::move(blocks));
}

bool DefectPattern::same_support(const DefectPattern& other) const {
  if (blocks.size() != other.blocks.size()) return false;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if ((blocks[i].left_defect_rank > 0) != (other.blocks[i].left_defect_rank > 0)) return false;
    if ((blocks[i].right_defect_rank > 0) != (other.blocks[i].right_defect_rank > 0)) return false;
  }
  return true;
}

ResidualCheck is_partial_isometry(const BlockOperator& w, const ToleranceConfig& cfg) {
  double residual = 0.0;
  for (const auto& b : w.blocks()) residual = std::max(residual, op_norm(b * b.adjoint() * b - b));
  return {residual <= cfg.iso_tol, residual};
}

DefectProjections defect_projections(const BlockOperator& w, const ToleranceConfig& cfg) {
  const auto check = is_partial_isometry(w, cfg);
  if (!check.ok) {
    throw Error(ErrorKind::kNotPartialIsometry,
                "residual " + std::to_string(check.residual) + " exceeds iso_tol");
  }
  const BlockOperator wa = w.adjoint();
  return {BlockOperator::left_identity(w.shape()) - w * wa,
          BlockOperator::right_identity(w.shape()) - wa * w};
}

DefectPattern defect_pattern(const BlockOperator& w, const ToleranceConfig& cfg) {
  const auto d = defect_projections(w, cfg);
  DefectPattern pattern;
  for (std::size_t i = 0; i < w.block_count(); ++i) {
    pattern.blocks.push_back({projection_rank(d.left.block(i)), projection_rank(d.right.block(i))});
  }
  return pattern;
}

std::vector<std::size_t> support_ranks(const BlockOperator& w) {
  std::vector<std::size_t> ranks;
  for (const auto& b : w.blocks()) ranks.push_back(projection_rank(b.adjoint() * b));
  return ranks;
}

bool is_extremal(const BlockOperator& w, const ToleranceConfig& cfg) {
  const auto pattern = defect_pattern(w, cfg);
  return std::all_of(pattern.blocks.begin(), pattern.blocks.end(), [](const BlockDefect& d) {
    return d.left_defect_rank == 0 || d.right_defect_rank == 0;
  });
}

BlockOperator random_partial_isometry(const BlockShape& shape, std::span<const std::size_t> ranks,
                                      RandomStream& rng) {
  if (ranks.size() != shape.size())
    throw Error(ErrorKind::kShapeMismatch, "one rank per block is required");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const std::size_t out = shape.out_dim(i);
    const std::size_t in = shape.in_dim(i);
    if (ranks[i] > std::min(out, in)) {
      throw Error(ErrorKind::kRankTooLarge, "block " + std::to_string(i) + " rank " +
                                                std::to_string(ranks[i]) + " exceeds min(" +
                                                std::to_string(out) + ", " + std::to_string(in) + ")");
    }
    const ComplexMatrix g = rng.gaussian_matrix(out, in);
    blocks.push_back(ranks[i] == 0 ? ComplexMatrix(out, in) : truncated_unitary_factor(g, ranks[i]));
  }
  return BlockOperator(std::move(blocks));
}

BlockOperator random_partial_isometry(const BlockShape& shape, std::span<const std::size_t> ranks,
                                      std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return random_partial_isometry(shape, ranks, rng);
}

BlockOperator random_extremal(const BlockShape& shape, RandomStream& rng) {
  std::vector<std::size_t> ranks;
  for (const auto& [out, in] : shape.blocks()) ranks.push_back(std::min(out, in));
  return random_partial_isometry(shape, ranks, rng);
}

BlockOperator random_extremal(const BlockShape& shape, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return random_extremal(shape, rng);
}

BlockOperator random_operator(const BlockShape& shape, std::span<const std::size_t> ranks, RandomStream& rng,
                              double sigma_lo, double sigma_hi) {
  if (ranks.size() != shape.size())
    throw Error(ErrorKind::kShapeMismatch, "one rank per block is required");
  if (!(sigma_lo > 0.0 && sigma_lo <= sigma_hi))
    throw Error(ErrorKind::kInvalidArgument, "need 0 < sigma_lo <= sigma_hi");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const std::size_t out = shape.out_dim(i);
    const std::size_t in = shape.in_dim(i);
    if (ranks[i] > std::min(out, in))
      throw Error(ErrorKind::kRankTooLarge, "block " + std::to_string(i) + " rank exceeds block size");
    const auto dec = svd(rng.gaussian_matrix(out, in));
    ComplexMatrix b(out, in);
    for (std::size_t k = 0; k < ranks[i]; ++k) {
      const double sigma = rng.uniform(sigma_lo, sigma_hi);
      for (std::size_t r = 0; r < out; ++r)
        for (std::size_t c = 0; c < in; ++c)
          b(r, c) += sigma * dec.left(r, k) * std::conj(dec.right(c, k));
    }
    blocks.push_back(std::move(b));
  }
  return BlockOperator(std::move(blocks));
}

BlockShape random_shape(RandomStream& rng, std::size_t max_dim, std::size_t max_blocks) {
  const std::size_t count = rng.uniform_int(1, max_blocks);
  std::vector<std::pair<std::size_t, std::size_t>> dims;
  for (std::size_t i = 0; i < count; ++i) {
    dims.emplace_back(rng.uniform_int(1, max_dim), rng.uniform_int(1, max_dim));
  }
  return BlockShape(std::move(dims));
}

ComplexMatrix random_unitary_near_identity(std::size_t n, double strength, RandomStream& rng) {
  ComplexMatrix m = rng.gaussian_matrix(n, n);
  m *= strength;
  m += ComplexMatrix::identity(n);
  return truncated_unitary_factor(m, n);
}

}  // namespace isometrica
