#pragma once

#include <vector>

#include "isometrica/block_operator.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

/// Canonical polar decomposition a = u |a| with u vanishing on ker |a|.
struct PolarData {
  BlockOperator u;
  BlockOperator modulus;        // |a|, restricted to the numerical support
  BlockOperator left_support;   // u u*
  BlockOperator right_support;  // u* u
  double gap = 0.0;             // smallest singular value kept; 0 for a = 0
  std::vector<std::size_t> numerical_rank;
};

struct SpectralGap {
  double gap = 0.0;
  std::vector<std::size_t> rank;
};

/// Smallest singular value above rank_tol * sigma_max (sigma_max taken over all
/// blocks), so the spectrum of |a| omits (0, gap).
///
/// Throws IllConditioned when a singular value lies within a decade of the
/// cutoff on either side: the numerical rank is then a coin toss.
SpectralGap spectral_gap(const BlockOperator& a, const ToleranceConfig& cfg = {});

PolarData polar_decompose(const BlockOperator& a, const ToleranceConfig& cfg = {});

/// Shorthand for polar_decompose(a).u.
BlockOperator polar_part(const BlockOperator& a, const ToleranceConfig& cfg = {});

/// The unique s with s = q s p, s a q = q and p a s = p, where p and q are
/// projections on the output and input spaces. Requires p a q to be invertible
/// as a map from ran q onto ran p; throws CornerSingular otherwise.
BlockOperator relative_inverse(const BlockOperator& a, const BlockOperator& p, const BlockOperator& q,
                               const ToleranceConfig& cfg = {});

struct AlignedOperator {
  BlockOperator b;               // (1 - p0 a s) a
  double nilpotency_residual = 0.0;  // ||(p0 a s)^2||
  double distance = 0.0;         // ||b - a||
  double distance_bound = 0.0;   // ||p0 a|| ||s|| ||a||
};

/// Strips the p0-component of a's range using the relative inverse s.
/// Throws NotNilpotent if (p0 a s)^2 is not zero to within 1e-10.
AlignedOperator align_left_support(const BlockOperator& a, const BlockOperator& p0,
                                   const BlockOperator& s);

}  // namespace isometrica

namespace isometrica {

/// Single-matrix polar part.
ComplexMatrix polar_part(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

}  // namespace isometrica
