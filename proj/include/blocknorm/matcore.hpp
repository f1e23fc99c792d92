#pragma once

#include <vector>

#include "blocknorm/matrix.hpp"

namespace blocknorm {

/// Eigenvalues sorted descending with matching orthonormal eigenvector columns.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

/// Left polar factorization x = d * u with d PSD and u unitary.
struct PolarPair {
    Matrix d;
    Matrix u;
};

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi with
/// complex rotations. Inputs within tolerance of Hermitian are symmetrized
/// before the sweeps; asymmetry beyond tolerance is an error. At most 64
/// sweeps, quadratic convergence in practice well before that.
EigenDecomposition herm_eigen(const Matrix& m, const ToleranceConfig& tol = {});

/// Largest singular value: sqrt of the top eigenvalue of m* m.
double operator_norm(const Matrix& m);

/// Closed form for || [[a,1],[1,c]] || with a, c > 0:
/// (a + c + sqrt((a-c)^2 + 4)) / 2.
double two_by_two_norm(double a, double c);

/// Minimal eigenvalue >= -(abs_tol + rel_tol * ||m||).
bool is_psd(const Matrix& m, const ToleranceConfig& tol = {});

/// Inverse of a Hermitian positive definite matrix via its eigensystem.
Matrix pd_inverse(const Matrix& m, const ToleranceConfig& tol = {});

/// PSD square root. Eigenvalues in [-tolerance, 0) are clipped to zero,
/// anything below that is an error rather than a silent fix.
Matrix psd_sqrt(const Matrix& m, const ToleranceConfig& tol = {});

/// Left polar decomposition x = d u of a square matrix, d = (x x*)^(1/2).
/// A rank-deficient x gets a deterministic unitary completion: the missing
/// right-singular directions are filled by orthonormalizing standard basis
/// vectors against the known ones, in index order.
PolarPair polar_left(const Matrix& x, const ToleranceConfig& tol = {});

/// || x x* - x* x ||; zero exactly when x is normal.
double commutator_defect(const Matrix& x);

/// For a 2x2 matrix the numerical range is a line segment iff x is normal.
bool is_line_segment_range(const Matrix& x, const ToleranceConfig& tol = {});

}  // namespace blocknorm
