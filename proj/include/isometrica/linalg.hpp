#pragma once

#include <functional>
#include <vector>

#include "isometrica/matrix.hpp"
#include "isometrica/tolerance.hpp"

namespace isometrica {

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix basis;         // unitary, column k pairs with values[k]
  int sweeps = 0;
};

/// (h + h*) / 2, for matrices that are Hermitian up to rounding.
ComplexMatrix hermitian_part(const ComplexMatrix& h);

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Rotations visit the upper triangle in row-major order; iteration stops once
/// the off-diagonal Frobenius mass is at most eig_tol times the Frobenius norm
/// of the input. Equal eigenvalues keep their pre-sort order.
EigenDecomposition hermitian_eig(const ComplexMatrix& h, const ToleranceConfig& cfg = {});

struct SingularValueDecomposition {
  ComplexMatrix left;            // rows x rows unitary
  std::vector<double> singulars;  // min(rows, cols) values, descending
  ComplexMatrix right;           // cols x cols unitary
};

/// Full SVD built from the eigendecomposition of the smaller Gram matrix.
SingularValueDecomposition svd(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// Largest singular value; 0 for an empty or zero matrix.
double op_norm(const ComplexMatrix& a);

/// basis * diag(f(eigenvalues)) * basis* for Hermitian h.
ComplexMatrix fun_calc(const ComplexMatrix& h, const std::function<double(double)>& f,
                       const ToleranceConfig& cfg = {});

/// Orthonormal basis (as columns) of the range of a Hermitian projection.
ComplexMatrix projection_range_basis(const ComplexMatrix& p, const ToleranceConfig& cfg = {});

/// ||p* - p|| and ||p^2 - p|| both within iso_tol.
bool is_projection(const ComplexMatrix& p, const ToleranceConfig& cfg = {});

}  // namespace isometrica
