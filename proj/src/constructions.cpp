#include "mirs/constructions.hpp"

#include <cmath>

#include "mirs/linalg.hpp"

namespace mirs {

MatrixSet PairLift::as_set() const {
  MatrixSet s;
  s.dim = m * d;
  s.members = {B0, B1};
  s.labels = {"B0", "B1"};
  s.claimed_jsr = source.claimed_jsr;
  s.name = (source.name.empty() ? "set" : source.name) + "-lift";
  s.validate();
  return s;
}

void BlockCombineSpec::validate() const {
  upper.validate();
  lower.validate();
  if (upper.size() != lower.size() || couplers.size() != upper.size())
    throw DimensionMismatch(
        "block combination needs equally many upper members, lower members "
        "and couplers");
  for (const auto& dmat : couplers)
    if (dmat.rows() != upper.dim || dmat.cols() != lower.dim)
      throw DimensionMismatch("coupler blocks must be upper-dim x lower-dim");
}

MatrixSet kron_product_set(const MatrixSet& a, const MatrixSet& b) {
  a.validate();
  b.validate();
  MatrixSet c;
  c.dim = a.dim * b.dim;
  if (c.dim > kMaxDim)
    throw SizeOverflow("Kronecker product set exceeds the maximum dimension");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      c.members.push_back(kron(a.members[i], b.members[j]));
      c.labels.push_back(a.labels[i] + "x" + b.labels[j]);
    }
  if (a.claimed_jsr && b.claimed_jsr)
    c.claimed_jsr = *a.claimed_jsr * *b.claimed_jsr;
  c.name = (a.name.empty() ? "a" : a.name) + "x" + (b.name.empty() ? "b" : b.name);
  c.validate();
  return c;
}

MatrixSet kron_power_set(const MatrixSet& a, int k) {
  a.validate();
  if (k < 1) throw DegenerateInput("Kronecker power exponent must be positive");
  double dim = 1;
  for (int i = 0; i < k; ++i) dim *= a.dim;
  if (dim > kMaxDim)
    throw SizeOverflow("Kronecker power set exceeds the maximum dimension");
  MatrixSet c;
  c.dim = static_cast<int>(dim);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Matrix p = a.members[i];
    for (int j = 1; j < k; ++j) p = kron(p, a.members[i]);
    c.members.push_back(std::move(p));
    c.labels.push_back(a.labels[i] + "^" + std::to_string(k));
  }
  if (a.claimed_jsr) c.claimed_jsr = std::pow(*a.claimed_jsr, k);
  c.name = (a.name.empty() ? "a" : a.name) + "^" + std::to_string(k);
  c.validate();
  return c;
}

MatrixSet block_combine(const BlockCombineSpec& spec) {
  spec.validate();
  MatrixSet c;
  c.dim = spec.upper.dim + spec.lower.dim;
  if (c.dim > kMaxDim)
    throw SizeOverflow("block combination exceeds the maximum dimension");
  for (std::size_t i = 0; i < spec.upper.size(); ++i) {
    c.members.push_back(
        block_upper(spec.upper.members[i], spec.couplers[i], spec.lower.members[i]));
    c.labels.push_back(spec.upper.labels[i] + "|" + spec.lower.labels[i]);
  }
  if (spec.upper.claimed_jsr && spec.lower.claimed_jsr)
    c.claimed_jsr = std::max(*spec.upper.claimed_jsr, *spec.lower.claimed_jsr);
  c.name = (spec.upper.name.empty() ? "u" : spec.upper.name) + "|" +
           (spec.lower.name.empty() ? "l" : spec.lower.name);
  c.validate();
  return c;
}

BlockCombineSpec make_block_combine_spec(MatrixSet upper, MatrixSet lower,
                                         std::vector<Matrix> couplers) {
  BlockCombineSpec spec;
  spec.upper = std::move(upper);
  spec.lower = std::move(lower);
  spec.couplers = std::move(couplers);
  spec.validate();
  spec.K0 = 0.0;
  for (const auto& dmat : spec.couplers) spec.K0 = std::max(spec.K0, op_norm(dmat));
  return spec;
}

PairLift pair_lift(const MatrixSet& a) {
  a.validate();
  PairLift lift;
  lift.source = a;
  lift.m = static_cast<int>(a.size());
  lift.d = a.dim;
  const int n = lift.m * lift.d;
  if (n > kMaxDim) throw SizeOverflow("pair lift exceeds the maximum dimension");

  // B0 moves register block r to block r+1 (cyclically): identity blocks
  // sit at (0, m-1) and on the first subdiagonal.
  lift.B0 = Matrix(n, n);
  const auto place_identity = [&](int bi, int bj) {
    for (int k = 0; k < lift.d; ++k)
      lift.B0.at(bi * lift.d + k, bj * lift.d + k) = 1.0;
  };
  if (lift.m == 1) {
    place_identity(0, 0);
  } else {
    place_identity(0, lift.m - 1);
    for (int r = 1; r < lift.m; ++r) place_identity(r, r - 1);
  }

  lift.B1 = Matrix(n, n);
  for (int r = 0; r < lift.m; ++r)
    for (int i = 0; i < lift.d; ++i)
      for (int j = 0; j < lift.d; ++j)
        lift.B1.at(r * lift.d + i, r * lift.d + j) = a.members[r].at(i, j);

  return lift;
}

MatrixSet pj_matrices(double alpha, double theta) {
  if (!(alpha >= 1.0 / 3.0 && alpha < 0.5))
    throw AlphaOutOfRange("projector-rotation family needs alpha in [1/3, 1/2)");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  MatrixSet set;
  set.dim = 3;
  set.members = {
      Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
      Matrix::from_rows({{1, s, c - 1}, {0, c, -s}, {0, s, c}}),
  };
  set.labels = {"A0", "A1"};
  set.claimed_jsr = 1.0;
  set.name = "pj";
  return set;
}

MatrixSet harvey_pair(double theta) {
  const MatrixSet pj = pj_matrices(1.0 / 3.0, theta);
  MatrixSet set;
  set.dim = 6;
  Matrix b0(6, 6), b1(6, 6);
  for (int k = 0; k < 3; ++k) {
    b0.at(k, 3 + k) = 1.0;
    b0.at(3 + k, k) = 1.0;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      b1.at(i, j) = pj.members[0].at(i, j);
      b1.at(3 + i, 3 + j) = pj.members[1].at(i, j);
    }
  set.members = {std::move(b0), std::move(b1)};
  set.labels = {"B0", "B1"};
  set.claimed_jsr = 1.0;
  set.name = "harvey";
  return set;
}

BlockCombineSpec pj_triangular_split(double alpha, double theta) {
  const MatrixSet pj = pj_matrices(alpha, theta);
  MatrixSet upper, lower;
  upper.dim = 1;
  lower.dim = 2;
  std::vector<Matrix> couplers;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const Matrix& m = pj.members[i];
    upper.members.push_back(Matrix::from_rows({{m.at(0, 0)}}));
    couplers.push_back(Matrix::from_rows({{m.at(0, 1), m.at(0, 2)}}));
    lower.members.push_back(Matrix::from_rows(
        {{m.at(1, 1), m.at(1, 2)}, {m.at(2, 1), m.at(2, 2)}}));
    upper.labels.push_back(pj.labels[i] + "u");
    lower.labels.push_back(pj.labels[i] + "l");
  }
  upper.claimed_jsr = 1.0;
  lower.claimed_jsr = 1.0;
  upper.name = "pj-upper-block";
  lower.name = "pj-lower-block";
  return make_block_combine_spec(std::move(upper), std::move(lower),
                                 std::move(couplers));
}

MatrixSet gz_family(double alpha, int grid_points) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw AlphaOutOfRange("triangular shear family needs alpha in (0, 1)");
  if (grid_points < 2)
    throw DegenerateInput("grid needs at least the two endpoint members");
  const double expo = 1.0 / (1.0 - alpha);
  MatrixSet set;
  set.dim = 2;
  for (int i = 0; i < grid_points; ++i) {
    const double t = static_cast<double>(i) / (grid_points - 1);
    set.members.push_back(Matrix::from_rows({{1, t}, {0, 1 - std::pow(t, expo)}}));
    set.labels.push_back("t" + std::to_string(i));
  }
  set.claimed_jsr = 1.0;
  set.name = "gz";
  return set;
}

}  // namespace mirs
