#include <gtest/gtest.h>

#include <cmath>

#include "isometrica/error.hpp"
#include "isometrica/linalg.hpp"
#include "isometrica/polar.hpp"
#include "oracles.hpp"

using namespace isometrica;

namespace {

BlockOperator single(ComplexMatrix m) { return BlockOperator(std::move(m)); }
BlockOperator diag(std::vector<double> d) { return single(ComplexMatrix::diagonal(std::span<const double>(d))); }

std::vector<std::size_t> random_ranks(const BlockShape& shape, RandomStream& rng) {
  std::vector<std::size_t> r;
  for (const auto& [o, i] : shape.blocks()) r.push_back(rng.uniform_int(0, std::min(o, i)));
  return r;
}

}  // namespace

TEST(SpectralGap, Examples) {
  auto g = spectral_gap(diag({3.0, 0.0}));
  EXPECT_DOUBLE_EQ(g.gap, 3.0);
  EXPECT_EQ(g.rank, std::vector<std::size_t>{1});
  g = spectral_gap(single(ComplexMatrix::identity(3)));
  EXPECT_DOUBLE_EQ(g.gap, 1.0);
  EXPECT_EQ(g.rank, std::vector<std::size_t>{3});
  g = spectral_gap(diag({1.0, 1e-15}));
  EXPECT_DOUBLE_EQ(g.gap, 1.0);
  EXPECT_EQ(g.rank, std::vector<std::size_t>{1});
  g = spectral_gap(BlockOperator::zero(BlockShape({{2, 3}})));
  EXPECT_EQ(g.gap, 0.0);
  EXPECT_EQ(g.rank, std::vector<std::size_t>{0});
}

TEST(SpectralGap, AmbiguousRankIsIllConditioned) {
  try {
    spectral_gap(diag({1.0, 1e-9}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIllConditioned);
  }
}

TEST(SpectralGap, CutoffIsGlobalAcrossBlocks) {
  // 1e-12 is below 1e-9 * 10 / 10 relative to the largest block.
  const BlockOperator a({ComplexMatrix{{10.0}}, ComplexMatrix{{1e-12}}});
  const auto g = spectral_gap(a);
  EXPECT_EQ(g.rank, (std::vector<std::size_t>{1, 0}));
  EXPECT_DOUBLE_EQ(g.gap, 10.0);
}

TEST(Polar, Examples) {
  EXPECT_EQ(polar_part(diag({3.0, 0.0})), diag({1.0, 0.0}));
  EXPECT_EQ(polar_part(single(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}})), single(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}));
  EXPECT_EQ(polar_part(BlockOperator::zero(BlockShape({{2, 2}}))).norm(), 0.0);
}

TEST(Polar, FullRankMatchesNewtonIteration) {
  RandomStream rng(30, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = rng.gaussian_matrix(4, 4);
    const BlockOperator u = polar_part(single(a));
    EXPECT_LE((u.block(0) - oracle::newton_polar(a)).max_abs(), 1e-9);
    EXPECT_LE((u.block(0).adjoint() * u.block(0) - ComplexMatrix::identity(4)).max_abs(), 1e-9);
  }
}

TEST(Polar, DataInvariants) {
  RandomStream rng(31, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const BlockShape shape = random_shape(rng, 6);
    const BlockOperator a = random_operator(shape, random_ranks(shape, rng), rng);
    const PolarData pd = polar_decompose(a);
    EXPECT_LE((pd.u * pd.modulus - a).norm(), 1e-9 * std::max(1.0, a.norm()));
    EXPECT_LE((pd.u.adjoint() * pd.u - pd.right_support).norm(), 1e-9);
    EXPECT_LE((pd.u * pd.u.adjoint() - pd.left_support).norm(), 1e-9);
    EXPECT_TRUE(is_partial_isometry(pd.u).ok);
    EXPECT_EQ(support_ranks(pd.u), pd.numerical_rank);
    if (a.norm() > 0.0) EXPECT_GT(pd.gap, 0.0);
  }
}

TEST(Polar, IdempotentOnPartialIsometriesAndCommutesWithAdjoint) {
  RandomStream rng(32, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const BlockShape shape = random_shape(rng, 6);
    const BlockOperator w = random_partial_isometry(shape, random_ranks(shape, rng), rng);
    EXPECT_LE((polar_part(w) - w).norm(), 1e-10);
    const BlockOperator a = random_operator(shape, random_ranks(shape, rng), rng);
    EXPECT_LE((polar_part(a.adjoint()) - polar_part(a).adjoint()).norm(), 1e-10);
  }
}

TEST(Polar, AdditiveOverOrthogonalSupports) {
  RandomStream rng(33, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.uniform_int(2, 6), n = rng.uniform_int(2, 6);
    const BlockShape shape({{m, n}});
    const std::size_t r = rng.uniform_int(0, std::min(m, n) - 1);
    const std::vector<std::size_t> ranks = {r};
    const BlockOperator a = random_operator(shape, ranks, rng);
    const auto d = defect_projections(polar_part(a));
    BlockOperator b = d.left * BlockOperator(rng.gaussian_matrix(m, n)) * d.right;
    EXPECT_LE((polar_part(a + b) - polar_part(a) - polar_part(b)).norm(), 1e-9);
  }
}

TEST(Polar, GapIsLipschitz) {
  RandomStream rng(34, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const BlockShape shape = random_shape(rng, 5);
    std::vector<std::size_t> full;
    for (const auto& [o, i] : shape.blocks()) full.push_back(std::min(o, i));
    const BlockOperator a = random_operator(shape, full, rng);
    BlockOperator e = random_operator(shape, full, rng);
    e *= rng.uniform(0.0, 0.2);
    const BlockOperator b = a + e;
    EXPECT_LE(std::abs(spectral_gap(a).gap - spectral_gap(b).gap), (a - b).norm() + 1e-10);
  }
}

TEST(RelativeInverse, Examples) {
  const ComplexMatrix a{{2.0, 1.0}, {0.0, 3.0}};
  const BlockOperator one = single(ComplexMatrix::identity(2));
  const BlockOperator s = relative_inverse(single(a), one, one);
  EXPECT_LE((s.block(0) - oracle::gauss_jordan_inverse(a)).max_abs(), 1e-12);

  const BlockOperator e11 = diag({1.0, 0.0});
  const BlockOperator s2 = relative_inverse(diag({2.0, 5.0}), e11, e11);
  EXPECT_LE((s2 - diag({0.5, 0.0})).norm(), 1e-14);
}

TEST(RelativeInverse, PerturbedCornerSatisfiesDefiningIdentities) {
  RandomStream rng(35, 0);
  const BlockOperator p = diag({1.0, 0.0});
  for (int trial = 0; trial < 20; ++trial) {
    BlockOperator e(rng.gaussian_matrix(2, 2));
    e *= 0.1 / e.norm();
    const BlockOperator a = diag({1.0, 0.0}) + e;
    const BlockOperator s = relative_inverse(a, p, p);
    EXPECT_LE((p * s * p - s).norm(), 1e-15);
    EXPECT_LE((s * a * p - p).norm(), 1e-8);
    EXPECT_LE((p * a * s - p).norm(), 1e-8);
  }
}

TEST(RelativeInverse, SingularCornerIsRejected) {
  const BlockOperator e11 = diag({1.0, 0.0});
  const BlockOperator e22 = diag({0.0, 1.0});
  try {
    relative_inverse(diag({1.0, 0.0}), e22, e22);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCornerSingular);
  }
  EXPECT_THROW(relative_inverse(diag({1.0, 1.0}), e11, single(ComplexMatrix::identity(2))), Error);
}

TEST(AlignLeftSupport, Examples) {
  const BlockOperator a = diag({1.0, 0.0});
  const BlockOperator p0 = diag({0.0, 1.0});
  const BlockOperator s = diag({1.0, 0.0});
  // p0 a = 0 leaves a unchanged.
  EXPECT_EQ(align_left_support(a, p0, s).b, a);

  const double t = 0.1;
  const BlockOperator an = single(ComplexMatrix{{1.0, 0.0}, {t, 0.0}});
  const AlignedOperator al = align_left_support(an, p0, s);
  EXPECT_LE((al.b - a).norm(), 1e-15);
  EXPECT_LE(al.nilpotency_residual, 1e-15);
  EXPECT_NEAR(al.distance, t, 1e-15);
  EXPECT_GE(al.distance_bound + 1e-15, al.distance);
}

TEST(AlignLeftSupport, DistanceShrinksWithPerturbation) {
  RandomStream rng(36, 0);
  const BlockOperator a0 = diag({1.0, 0.0, 0.0});
  const BlockOperator p = diag({1.0, 0.0, 0.0});
  const BlockOperator p0 = diag({0.0, 1.0, 1.0});
  BlockOperator c(rng.gaussian_matrix(3, 3));
  c *= 1.0 / c.norm();
  double previous = 1.0;
  for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const BlockOperator an = a0 + t * c;
    const BlockOperator s = relative_inverse(an, p, p);
    const AlignedOperator al = align_left_support(an, p0, s);
    EXPECT_LE(al.nilpotency_residual, 1e-10);
    EXPECT_LE(al.distance, al.distance_bound + 1e-12);
    EXPECT_LT(al.distance, previous);
    EXPECT_LE((p0 * al.b * s).norm(), 1e-10);  // the p0 component is gone
    previous = al.distance;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(AlignLeftSupport, NonNilpotentIsRejected) {
  const BlockOperator one = single(ComplexMatrix::identity(2));
  try {
    align_left_support(one, one, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotNilpotent);
  }
}
