#pragma once

#include "mirs/matrix.hpp"

namespace mirs {

// Hard cap on constructed dimensions (Kronecker products grow fast; the
// cap turns silent blowup into an explicit SizeOverflow).
inline constexpr int kMaxDim = 64;

// Largest singular value (Euclidean operator norm), accurate to about
// 1e-12 relative. Deterministic: cyclic Jacobi eigensweep on the Gram
// matrix of the smaller side.
double op_norm(const Matrix& m);

// Euclidean norm of column j.
double column_norm(const Matrix& m, int j);

double frobenius_norm(const Matrix& m);

// Spectral radius to about 1e-8 relative, via normalized repeated
// squaring of the matrix with an endpoint extrapolation that removes the
// polynomial factor contributed by nontrivial Jordan blocks. Throws
// DegenerateInput if the input norm already overflows.
double spectral_radius(const Matrix& m);

// Kronecker product, block layout: entry (i,j) of a scales a copy of b.
Matrix kron(const Matrix& a, const Matrix& b);

// [[a, d], [0, b]] as one (d1+d2) x (d1+d2) matrix.
Matrix block_upper(const Matrix& a, const Matrix& d, const Matrix& b);

}  // namespace mirs
