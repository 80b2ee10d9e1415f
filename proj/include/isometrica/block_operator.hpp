#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "isometrica/matrix.hpp"
#include "isometrica/rng.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

/// Ordered list of (out_dim, in_dim) corner sizes of a finite direct sum.
class BlockShape {
 public:
  BlockShape() = default;
  explicit BlockShape(std::vector<std::pair<std::size_t, std::size_t>> blocks);

  std::size_t size() const noexcept { return blocks_.size(); }
  std::size_t out_dim(std::size_t i) const { return blocks_.at(i).first; }
  std::size_t in_dim(std::size_t i) const { return blocks_.at(i).second; }
  std::span<const std::pair<std::size_t, std::size_t>> blocks() const noexcept { return blocks_; }
  BlockShape adjoint() const;

  friend bool operator==(const BlockShape&, const BlockShape&) = default;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> blocks_;
};

/// Element of a direct sum of rectangular corners; every algebraic operation
/// acts block by block.
class BlockOperator {
 public:
  BlockOperator() = default;
  explicit BlockOperator(std::vector<ComplexMatrix> blocks);
  /// Single-corner convenience.
  explicit BlockOperator(ComplexMatrix block);

  static BlockOperator zero(const BlockShape& shape);
  /// Identity on the output spaces (1 in the left corner algebra).
  static BlockOperator left_identity(const BlockShape& shape);
  /// Identity on the input spaces (1 in the right corner algebra).
  static BlockOperator right_identity(const BlockShape& shape);

  const BlockShape& shape() const noexcept { return shape_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const ComplexMatrix& block(std::size_t i) const { return blocks_.at(i); }
  ComplexMatrix& block(std::size_t i) { return blocks_.at(i); }
  std::span<const ComplexMatrix> blocks() const noexcept { return blocks_; }

  BlockOperator adjoint() const;
  /// Max over blocks of the operator norm.
  double norm() const;

  BlockOperator& operator+=(const BlockOperator& rhs);
  BlockOperator& operator-=(const BlockOperator& rhs);
  BlockOperator& operator*=(Complex s);

  friend bool operator==(const BlockOperator&, const BlockOperator&) = default;

 private:
  BlockShape shape_;
  std::vector<ComplexMatrix> blocks_;
};

BlockOperator operator+(BlockOperator lhs, const BlockOperator& rhs);
BlockOperator operator-(BlockOperator lhs, const BlockOperator& rhs);
BlockOperator operator*(const BlockOperator& lhs, const BlockOperator& rhs);
BlockOperator operator*(Complex s, BlockOperator a);

struct ResidualCheck {
  bool ok = false;
  double residual = 0.0;
};

struct BlockDefect {
  std::size_t left_defect_rank = 0;   // rank of 1 - u u*
  std::size_t right_defect_rank = 0;  // rank of 1 - u* u

  friend bool operator==(const BlockDefect&, const BlockDefect&) = default;
};

/// Per-block defect ranks; the support (which ranks are nonzero) stands in for
/// the defect ideals of the direct sum.
struct DefectPattern {
  std::vector<BlockDefect> blocks;

  bool same_support(const DefectPattern& other) const;
  friend bool operator==(const DefectPattern&, const DefectPattern&) = default;
};

struct DefectProjections {
  BlockOperator left;   // p0 = 1 - w w*
  BlockOperator right;  // q0 = 1 - w* w
};

/// ||w w* w - w|| <= iso_tol.
ResidualCheck is_partial_isometry(const BlockOperator& w, const ToleranceConfig& cfg = {});

DefectProjections defect_projections(const BlockOperator& w, const ToleranceConfig& cfg = {});

DefectPattern defect_pattern(const BlockOperator& w, const ToleranceConfig& cfg = {});

/// Rank of u*u per block, rounded from the trace.
std::vector<std::size_t> support_ranks(const BlockOperator& w);

/// No block carries both a left and a right defect.
bool is_extremal(const BlockOperator& w, const ToleranceConfig& cfg = {});

BlockOperator random_partial_isometry(const BlockShape& shape, std::span<const std::size_t> ranks,
                                      RandomStream& rng);
BlockOperator random_partial_isometry(const BlockShape& shape, std::span<const std::size_t> ranks,
                                      std::uint64_t seed);

/// Full-rank partial isometry in every block: an isometry or co-isometry.
BlockOperator random_extremal(const BlockShape& shape, RandomStream& rng);
BlockOperator random_extremal(const BlockShape& shape, std::uint64_t seed);

/// Random operator with the given block ranks and nonzero singular values
/// drawn uniformly from [sigma_lo, sigma_hi].
BlockOperator random_operator(const BlockShape& shape, std::span<const std::size_t> ranks, RandomStream& rng,
                              double sigma_lo = 0.5, double sigma_hi = 2.0);
/// Random shape with 1 to max_blocks blocks and dimensions in [1, max_dim].
BlockShape random_shape(RandomStream& rng, std::size_t max_dim, std::size_t max_blocks = 3);

/// Unitary u(1 + strength * G) with G complex Gaussian; strength 0 gives the identity.
ComplexMatrix random_unitary_near_identity(std::size_t n, double strength, RandomStream& rng);

}  // namespace isometrica
