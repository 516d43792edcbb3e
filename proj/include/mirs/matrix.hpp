#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mirs/errors.hpp"

namespace mirs {

// Small dense real matrix, row-major, immutable by convention: operations
// return fresh values. Entries must be finite at construction from user
// data; intermediate arithmetic is unchecked.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(check_dim(rows)), cols_(check_dim(cols)),
        entries_(static_cast<std::size_t>(rows) * cols, 0.0) {}
  Matrix(int rows, int cols, std::vector<double> entries)
      : rows_(check_dim(rows)), cols_(check_dim(cols)), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(rows_) * cols_)
      throw DimensionMismatch("entry count does not match rows*cols");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  // Convenience row constructors; validate rectangular shape and
  // finiteness (the paths user-facing code, parsers, and tests use).
  template <class Rows>
  static Matrix from_row_range(const Rows& rows) {
    int r = static_cast<int>(rows.size());
    if (r == 0) throw DimensionMismatch("matrix needs at least one row");
    int c = static_cast<int>(rows.begin()->size());
    Matrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c)
        throw DimensionMismatch("ragged rows in matrix literal");
      int j = 0;
      for (double v : row) {
        if (!std::isfinite(v)) throw DegenerateInput("non-finite matrix entry");
        m.at(i, j++) = v;
      }
      ++i;
    }
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    return from_row_range(rows);
  }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    return from_row_range(rows);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<double>& data() const { return entries_; }
  std::vector<double>& data() { return entries_; }

  bool all_finite() const {
    for (double v : entries_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix scaled(double s) const {
    Matrix m = *this;
    for (double& v : m.entries_) v *= s;
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  static int check_dim(int d) {
    if (d <= 0) throw DimensionMismatch("matrix dimensions must be positive");
    return d;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (std::fabs(a.data()[i] - b.data()[i]) > tol) return false;
  return true;
}

// A finite labeled family of square matrices of shared dimension, the
// object whose length-n products the engine enumerates. claimed_jsr is
// advisory metadata (what the constructor of the family believes the
// joint spectral radius to be); it is recorded, not enforced.
struct MatrixSet {
  int dim = 0;
  std::vector<Matrix> members;
  std::vector<std::string> labels;
  std::optional<double> claimed_jsr;
  std::string name;

  void validate() const {
    if (members.empty()) throw DegenerateInput("matrix set has no members");
    if (labels.size() != members.size())
      throw DimensionMismatch("matrix set needs one label per member");
    for (const auto& m : members) {
      if (!m.square() || m.rows() != dim)
        throw DimensionMismatch("matrix set members must all be dim x dim");
      if (!m.all_finite()) throw DegenerateInput("non-finite entry in matrix set");
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j]) throw DegenerateInput("duplicate member label");
  }

  std::size_t size() const { return members.size(); }
};

// Builds a set with auto-generated labels m0, m1, ...
MatrixSet make_set(std::string name, std::vector<Matrix> members,
                   std::optional<double> claimed_jsr = std::nullopt);

}  // namespace mirs
