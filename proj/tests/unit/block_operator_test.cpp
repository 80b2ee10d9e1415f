#include <gtest/gtest.h>

#include <cmath>

#include "isometrica/block_operator.hpp"
#include "isometrica/error.hpp"
#include "isometrica/linalg.hpp"
#include "isometrica/polar.hpp"

using namespace isometrica;

namespace {

BlockOperator single(ComplexMatrix m) { return BlockOperator(std::move(m)); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST(BlockShape, Invariants) {
  EXPECT_THROW(BlockShape(std::vector<std::pair<std::size_t, std::size_t>>{}), Error);
  EXPECT_THROW(BlockShape({{0, 2}}), Error);
  const BlockShape s({{2, 3}, {1, 1}});
  EXPECT_EQ(s.adjoint(), BlockShape({{3, 2}, {1, 1}}));
}

TEST(BlockOperator, NormIsMaxOverBlocks) {
  const BlockOperator a({ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}, ComplexMatrix{{3.0}}});
  EXPECT_DOUBLE_EQ(a.norm(), 3.0);
  EXPECT_EQ(a.shape(), BlockShape({{2, 2}, {1, 1}}));
  const BlockOperator b = a * a.adjoint();
  EXPECT_EQ(b.block(1), ComplexMatrix{{9.0}});
  EXPECT_EQ(kind_of([&] { (void)(a + single(ComplexMatrix::identity(2))); }), ErrorKind::kShapeMismatch);
}

TEST(PartialIsometry, Examples) {
  EXPECT_TRUE(is_partial_isometry(BlockOperator::zero(BlockShape({{2, 3}}))).ok);
  const auto check = is_partial_isometry(single(ComplexMatrix{{1.0, 0.0}, {0.0, 0.5}}));
  EXPECT_FALSE(check.ok);
  EXPECT_NEAR(check.residual, 0.375, 1e-15);
  RandomStream rng(5, 0);
  const BlockOperator a(rng.gaussian_matrix(3, 4));
  EXPECT_TRUE(is_partial_isometry(polar_part(a)).ok);
}

TEST(DefectProjections, Examples) {
  auto id = defect_projections(single(ComplexMatrix::identity(2)));
  EXPECT_EQ(id.left.block(0).max_abs(), 0.0);
  EXPECT_EQ(id.right.block(0).max_abs(), 0.0);

  const ComplexMatrix e22{{0.0, 0.0}, {0.0, 1.0}};
  auto d = defect_projections(single(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));
  EXPECT_EQ(d.left.block(0), e22);
  EXPECT_EQ(d.right.block(0), e22);

  auto row = defect_projections(single(ComplexMatrix{{1.0, 0.0}}));
  EXPECT_EQ(row.left.block(0), ComplexMatrix(1, 1));
  EXPECT_EQ(row.right.block(0), e22);

  EXPECT_EQ(kind_of([] { defect_projections(single(ComplexMatrix{{2.0}})); }), ErrorKind::kNotPartialIsometry);
}

TEST(Extremal, Examples) {
  RandomStream rng(6, 0);
  EXPECT_TRUE(is_extremal(random_extremal(BlockShape({{3, 3}}), rng)));
  EXPECT_TRUE(is_extremal(single(ComplexMatrix{{1.0, 0.0}})));
  EXPECT_FALSE(is_extremal(single(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}})));
  const DefectPattern pat = defect_pattern(single(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));
  EXPECT_EQ(pat.blocks[0], (BlockDefect{1, 1}));
}

TEST(RandomPartialIsometry, RanksAndExamples) {
  const BlockShape shape({{3, 5}, {4, 4}, {2, 1}});
  const std::vector<std::size_t> zero_ranks = {0, 0, 0};
  EXPECT_EQ(random_partial_isometry(shape, zero_ranks, 1).norm(), 0.0);

  const std::vector<std::size_t> ranks = {2, 4, 1};
  const BlockOperator w = random_partial_isometry(shape, ranks, 99);
  EXPECT_LE(is_partial_isometry(w).residual, 1e-10);
  EXPECT_EQ(support_ranks(w), ranks);
  EXPECT_LE((w.block(1).adjoint() * w.block(1) - ComplexMatrix::identity(4)).max_abs(), 1e-10);
  EXPECT_EQ(random_partial_isometry(shape, ranks, 99), w);  // deterministic per seed

  const DefectPattern p = defect_pattern(w);
  EXPECT_EQ(p.blocks[0], (BlockDefect{1, 3}));
  EXPECT_EQ(p.blocks[1], (BlockDefect{0, 0}));
  EXPECT_EQ(p.blocks[2], (BlockDefect{1, 0}));

  const std::vector<std::size_t> too_big = {4, 4, 1};
  EXPECT_EQ(kind_of([&] { random_partial_isometry(shape, too_big, 1); }), ErrorKind::kRankTooLarge);
}

TEST(RandomExtremal, Examples) {
  const BlockOperator unit = random_extremal(BlockShape({{1, 2}}), 3);
  EXPECT_NEAR(op_norm(unit.block(0)), 1.0, 1e-12);
  const BlockOperator co = random_extremal(BlockShape({{3, 5}}), 4);
  EXPECT_LE((co.block(0) * co.block(0).adjoint() - ComplexMatrix::identity(3)).max_abs(), 1e-10);
  EXPECT_TRUE(is_extremal(co));
}

TEST(PartialIsometry, AdjointSwapsDefects) {
  RandomStream rng(8, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const BlockShape shape = random_shape(rng, 6);
    std::vector<std::size_t> ranks;
    for (const auto& [o, i] : shape.blocks()) ranks.push_back(rng.uniform_int(0, std::min(o, i)));
    const BlockOperator w = random_partial_isometry(shape, ranks, rng);
    const BlockOperator ws = w.adjoint();
    ASSERT_TRUE(is_partial_isometry(ws).ok);
    const auto d = defect_projections(w);
    const auto ds = defect_projections(ws);
    EXPECT_LE((d.left - ds.right).norm(), 1e-10);
    EXPECT_LE((d.right - ds.left).norm(), 1e-10);
  }
}

TEST(PartialIsometry, PatternOfPolarPartFollowsRankOfOperator) {
  RandomStream rng(9, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const BlockShape shape = random_shape(rng, 6);
    std::vector<std::size_t> ranks;
    for (const auto& [o, i] : shape.blocks()) ranks.push_back(rng.uniform_int(0, std::min(o, i)));
    const BlockOperator a = random_operator(shape, ranks, rng);
    const DefectPattern p = defect_pattern(polar_part(a));
    for (std::size_t b = 0; b < shape.size(); ++b) {
      EXPECT_EQ(p.blocks[b].left_defect_rank, shape.out_dim(b) - ranks[b]);
      EXPECT_EQ(p.blocks[b].right_defect_rank, shape.in_dim(b) - ranks[b]);
    }
  }
}

TEST(Extremal, IsometriesPreserveNorms) {
  RandomStream rng(10, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const BlockShape shape = random_shape(rng, 6);
    const BlockOperator w = random_extremal(shape, rng);
    for (const auto& b : w.blocks()) {
      // Isometry when tall, co-isometry when wide.
      const ComplexMatrix m = b.rows() >= b.cols() ? b : b.adjoint();
      ComplexVector x(m.cols());
      for (auto& z : x) z = rng.complex_normal();
      EXPECT_NEAR(norm(m * std::span<const Complex>(x)), norm(x), 1e-10);
    }
  }
}

TEST(RandomOperator, PrescribedRankAndSingularRange) {
  RandomStream rng(21, 0);
  const BlockShape shape({{4, 6}, {3, 3}});
  const std::vector<std::size_t> ranks = {2, 3};
  const BlockOperator a = random_operator(shape, ranks, rng, 0.5, 2.0);
  const auto s0 = svd(a.block(0)).singulars;
  EXPECT_GE(s0[1], 0.5 - 1e-12);
  EXPECT_LE(s0[0], 2.0 + 1e-12);
  EXPECT_LT(s0[2], 1e-12);
}
