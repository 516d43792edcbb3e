#pragma once

#include "mirs/matrix.hpp"

namespace mirs {

// The two-matrix lift of an m-member set: B0 cycles the m register
// blocks (with an identity in the top-right corner) and B1 applies the
// members blockwise. Products of {B0, B1} simulate products of the
// source set at a fixed length dilation, which squeezes the lifted
// sequence between running maxima of the source sequence.
struct PairLift {
  MatrixSet source;
  Matrix B0;
  Matrix B1;
  int m = 0;
  int d = 0;

  MatrixSet as_set() const;
};

// Shared-index block-triangular combination: members are
// [[upper_i, coupler_i], [0, lower_i]].
struct BlockCombineSpec {
  MatrixSet upper;
  MatrixSet lower;
  std::vector<Matrix> couplers;
  double K0 = 0.0;  // sup of the coupler norms

  void validate() const;
};

// All pairwise Kronecker products {A_i (x) B_j}; the sequence of the
// result is the pointwise product of the factor sequences.
MatrixSet kron_product_set(const MatrixSet& a, const MatrixSet& b);

// Memberwise Kronecker power {A^(x k)}; the sequence of the result is the
// k-th power of the source sequence.
MatrixSet kron_power_set(const MatrixSet& a, int k);

MatrixSet block_combine(const BlockCombineSpec& spec);

BlockCombineSpec make_block_combine_spec(MatrixSet upper, MatrixSet lower,
                                         std::vector<Matrix> couplers);

PairLift pair_lift(const MatrixSet& a);

// The projector-and-twisted-rotation pair on R^3:
//   A0 = diag(1, 1, 0),
//   A1 = [[1, sin t, cos t - 1], [0, cos t, -sin t], [0, sin t, cos t]].
// For badly approximable angles t the sequence grows like n^alpha with
// alpha = gamma / (1 + 2 gamma) determined by the approximation exponent
// gamma of t / pi; alpha must lie in [1/3, 1/2).
MatrixSet pj_matrices(double alpha, double theta);

// The explicit 6x6 pair {B0, B1} whose sequence grows like n^(1/3): the
// two-block lift of pj_matrices(1/3, theta) written out directly.
MatrixSet harvey_pair(double theta);

// pj_matrices split along its invariant first coordinate: 1x1 upper blocks,
// couplers the top rows, lower blocks the remaining 2x2.  Recombining the
// spec reproduces the pair entrywise; the diagonal blocks are contractive,
// which is the precondition for the coupling-sequence analysis.
BlockCombineSpec pj_triangular_split(double alpha, double theta);

// Uniform discretization (grid_points values of t in [0,1], endpoints
// included) of the compact family {[[1, t], [0, 1 - t^(1/(1-alpha))]]}.
// The computed sequence is a certified lower bound for the sequence of
// the full compact family.
MatrixSet gz_family(double alpha, int grid_points);

}  // namespace mirs
