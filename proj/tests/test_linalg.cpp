#include <cmath>

#include <doctest.h>

#include "mirs/errors.hpp"
#include "mirs/linalg.hpp"
#include "mirs/matrix.hpp"

using namespace mirs;

TEST_SUITE("linalg") {

TEST_CASE("operator norm matches closed forms") {
  CHECK(op_norm(Matrix::from_rows({{3, 0}, {0, 2}})) == doctest::Approx(3.0));
  CHECK(op_norm(Matrix::from_rows({{0, 1}, {0, 0}})) == doctest::Approx(1.0));
  CHECK(op_norm(Matrix::identity(5)) == doctest::Approx(1.0));

  // Rotations are isometries.
  const double t = 0.7;
  Matrix rot = Matrix::from_rows(
      {{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}});
  CHECK(op_norm(rot) == doctest::Approx(1.0).epsilon(1e-14));

  // The unit shear [[1,1],[0,1]] has largest singular value equal to the
  // golden ratio: its squared Gram eigenvalues are (3 +- sqrt 5)/2.
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(op_norm(Matrix::from_rows({{1, 1}, {0, 1}})) ==
        doctest::Approx(phi).epsilon(1e-14));

  // Rank-one [[1,2],[2,4]]: norm is the Frobenius norm = 5.
  CHECK(op_norm(Matrix::from_rows({{1, 2}, {2, 4}})) ==
        doctest::Approx(5.0).epsilon(1e-14));

  // Rectangular matrices take the Gram of the smaller side.
  CHECK(op_norm(Matrix::from_rows({{3, 4}})) == doctest::Approx(5.0));
  CHECK(op_norm(Matrix::from_rows({{3}, {4}})) == doctest::Approx(5.0));
}

TEST_CASE("column and Frobenius norms") {
  Matrix m = Matrix::from_rows({{3, 1}, {4, 1}});
  CHECK(column_norm(m, 0) == doctest::Approx(5.0));
  CHECK(column_norm(m, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(27.0)));
  // The operator norm never exceeds the Frobenius norm.
  CHECK(op_norm(m) <= frobenius_norm(m) + 1e-12);
}

TEST_CASE("spectral radius on known spectra") {
  CHECK(spectral_radius(Matrix::from_rows({{2, 1}, {0, 0.5}})) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(spectral_radius(Matrix::from_rows({{0, 1}, {0, 0}})) ==
        doctest::Approx(0.0));
  // Rotation: complex eigenvalues on the unit circle.
  const double t = 1.1;
  Matrix rot = Matrix::from_rows(
      {{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}});
  CHECK(spectral_radius(rot) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(spectral_radius(rot.scaled(1.3)) == doctest::Approx(1.3).epsilon(1e-10));
  // Defective: Jordan block has radius 1 despite norm phi; the
  // extrapolation is clamped by the root estimates so it cannot overshoot
  // past the norm either.
  const double jordan = spectral_radius(Matrix::from_rows({{1, 1}, {0, 1}}));
  CHECK(jordan == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(jordan <= (1.0 + std::sqrt(5.0)) / 2.0 + 1e-12);
}

TEST_CASE("kronecker product structure") {
  Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  Matrix b = Matrix::from_rows({{0, 5}, {6, 7}});
  Matrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  CHECK(k.at(0, 1) == 5.0);    // a00 * b01
  CHECK(k.at(2, 0) == 0.0);    // a10 * b00
  CHECK(k.at(3, 3) == 4.0 * 7.0);

  // Mixed-product identity (A x B)(C x D) = AC x BD.
  Matrix c = Matrix::from_rows({{2, 0}, {1, 1}});
  Matrix d = Matrix::from_rows({{1, 1}, {0, 2}});
  CHECK(approx_equal(kron(a, b) * kron(c, d), kron(a * c, b * d), 1e-12));

  // Operator norm is multiplicative across the Kronecker product.
  CHECK(op_norm(kron(a, b)) ==
        doctest::Approx(op_norm(a) * op_norm(b)).epsilon(1e-12));

  CHECK_THROWS_AS(kron(Matrix::identity(9), Matrix::identity(9)), SizeOverflow);
}

TEST_CASE("block upper-triangular assembly") {
  Matrix m = block_upper(Matrix::from_rows({{1}}), Matrix::from_rows({{5}}),
                         Matrix::from_rows({{1}}));
  REQUIRE(m.rows() == 2);
  CHECK(m.at(0, 1) == 5.0);
  CHECK(m.at(1, 0) == 0.0);
  // Singular values of [[1,5],[0,1]]: the norm is (5 + sqrt 29)/2.
  CHECK(op_norm(m) ==
        doctest::Approx((5.0 + std::sqrt(29.0)) / 2.0).epsilon(1e-14));

  Matrix big = block_upper(Matrix::identity(2), Matrix::zero(2, 3),
                           Matrix::identity(3));
  CHECK(approx_equal(big, Matrix::identity(5), 0.0));

  CHECK_THROWS_AS(block_upper(Matrix::from_rows({{1, 2}}), Matrix::zero(1, 1),
                              Matrix::identity(1)),
                  DimensionMismatch);
  CHECK_THROWS_AS(block_upper(Matrix::identity(2), Matrix::zero(1, 1),
                              Matrix::identity(1)),
                  DimensionMismatch);
}

TEST_CASE("matrix arithmetic guards") {
  CHECK_THROWS_AS(Matrix::from_rows({{1, 2}, {3}}), DimensionMismatch);
  CHECK_THROWS_AS(Matrix::from_rows({{1, std::nan("")}}), DegenerateInput);
  Matrix a = Matrix::from_rows({{1, 2}});
  Matrix b = Matrix::from_rows({{1, 2}});
  CHECK_THROWS_AS(a * b, DimensionMismatch);
  CHECK((a + b).at(0, 1) == 4.0);
}

}  // TEST_SUITE
