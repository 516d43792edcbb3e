#include "mirs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mirs {

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("product shapes incompatible");
  Matrix c(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < k; ++l) {
      const double av = a.at(i, l);
      if (av == 0.0) continue;
      for (int j = 0; j < m; ++j) c.at(i, j) += av * b.at(l, j);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("sum shapes incompatible");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

MatrixSet make_set(std::string name, std::vector<Matrix> members,
                   std::optional<double> claimed_jsr) {
  MatrixSet s;
  s.name = std::move(name);
  s.dim = members.empty() ? 0 : members.front().rows();
  s.members = std::move(members);
  for (std::size_t i = 0; i < s.members.size(); ++i)
    s.labels.push_back("m" + std::to_string(i));
  s.claimed_jsr = claimed_jsr;
  s.validate();
  return s;
}

namespace {

// Largest eigenvalue of a symmetric PSD matrix by cyclic Jacobi rotations.
// g is row-major n x n and is destroyed.
double jacobi_lambda_max(std::vector<double>& g, int n) {
  if (n == 1) return g[0];
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double gpq = g[p * n + q];
        const double gpp = g[p * n + p];
        const double gqq = g[q * n + q];
        if (std::fabs(gpq) <= eps * std::sqrt(std::fabs(gpp) * std::fabs(gqq)) ||
            gpq == 0.0)
          continue;
        rotated = true;
        const double tau = (gqq - gpp) / (2.0 * gpq);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double gkp = g[k * n + p];
          const double gkq = g[k * n + q];
          g[k * n + p] = c * gkp - s * gkq;
          g[k * n + q] = s * gkp + c * gkq;
        }
        for (int k = 0; k < n; ++k) {
          const double gpk = g[p * n + k];
          const double gqk = g[q * n + k];
          g[p * n + k] = c * gpk - s * gqk;
          g[q * n + k] = s * gpk + c * gqk;
        }
      }
    }
    if (!rotated) break;
  }
  double lam = g[0];
  for (int i = 1; i < n; ++i) lam = std::max(lam, g[i * n + i]);
  return lam;
}

}  // namespace

double op_norm(const Matrix& m) {
  // Gram matrix of the smaller side keeps the eigenproblem as small as
  // possible; both choices share the nonzero spectrum.
  const bool use_cols = m.cols() <= m.rows();
  const int n = use_cols ? m.cols() : m.rows();
  std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
  if (use_cols) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < m.rows(); ++k) s += m.at(k, i) * m.at(k, j);
        g[i * n + j] = g[j * n + i] = s;
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < m.cols(); ++k) s += m.at(i, k) * m.at(j, k);
        g[i * n + j] = g[j * n + i] = s;
      }
  }
  const double lam = jacobi_lambda_max(g, n);
  return lam > 0 ? std::sqrt(lam) : 0.0;
}

double column_norm(const Matrix& m, int j) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i) s += m.at(i, j) * m.at(i, j);
  return std::sqrt(s);
}

double frobenius_norm(const Matrix& m) {
  double s = 0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double spectral_radius(const Matrix& m) {
  if (!m.square()) throw DimensionMismatch("spectral radius needs a square matrix");
  const double r0 = op_norm(m);
  if (!std::isfinite(r0))
    throw DegenerateInput("matrix norm overflows before renormalization engages");
  if (r0 == 0.0) return 0.0;

  // Normalized repeated squaring. With B_0 = M / ||M|| and
  // B_{j} = B_{j-1}^2 / t_j, the j-th root estimate satisfies
  //   log est_j = log ||M|| + sum_{i<=j} 2^{-i} log t_i,
  // and est_j decreases to rho(M). A nontrivial Jordan block of size b
  // contributes (b-1) * j * 2^{-j} * log 2 to log est_j, so the tail is
  // fit against {1, j 2^{-j}, 2^{-j}} and read off at j = infinity.
  Matrix b = m.scaled(1.0 / r0);
  double logest = std::log(r0);
  std::vector<double> lest{logest};
  const int jmax = 24;
  for (int j = 1; j <= jmax; ++j) {
    b = b * b;
    const double t = op_norm(b);
    if (t == 0.0) return 0.0;
    if (!std::isfinite(t))
      throw DegenerateInput("norm overflow during spectral radius iteration");
    b = b.scaled(1.0 / t);
    logest += std::ldexp(std::log(t), -j);
    lest.push_back(logest);
    if (j >= 8 && std::fabs(lest[j] - lest[j - 1]) <
                      1e-13 * std::max(1.0, std::fabs(lest[j])))
      break;
  }

  const int last = static_cast<int>(lest.size()) - 1;
  double result;
  if (last < 2) {
    result = std::exp(lest[last]);
  } else {
    // Solve the 3x3 system for the fit on the last three estimates.
    double a[3][4];
    for (int r = 0; r < 3; ++r) {
      const int j = last - 2 + r;
      a[r][0] = 1.0;
      a[r][1] = std::ldexp(static_cast<double>(j), -j);
      a[r][2] = std::ldexp(1.0, -j);
      a[r][3] = lest[j];
    }
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
      for (int k = 0; k < 4; ++k) std::swap(a[col][k], a[piv][k]);
      for (int r = 0; r < 3; ++r) {
        if (r == col || a[col][col] == 0.0) continue;
        const double f = a[r][col] / a[col][col];
        for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
      }
    }
    const double loga = a[0][0] != 0.0 ? a[0][3] / a[0][0] : lest[last];
    result = std::exp(loga);
  }
  // Every root estimate is an upper bound on rho, so the extrapolation may
  // never exceed the smallest one.
  const double cap = std::exp(*std::min_element(lest.begin(), lest.end()));
  return std::clamp(result, 0.0, cap);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const long long r = static_cast<long long>(a.rows()) * b.rows();
  const long long c = static_cast<long long>(a.cols()) * b.cols();
  if (r > kMaxDim || c > kMaxDim)
    throw SizeOverflow("Kronecker product exceeds the maximum dimension " +
                       std::to_string(kMaxDim));
  Matrix k(static_cast<int>(r), static_cast<int>(c));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const double av = a.at(i, j);
      if (av == 0.0) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q)
          k.at(i * b.rows() + p, j * b.cols() + q) = av * b.at(p, q);
    }
  return k;
}

Matrix block_upper(const Matrix& a, const Matrix& d, const Matrix& b) {
  if (!a.square() || !b.square())
    throw DimensionMismatch("block_upper diagonal blocks must be square");
  if (d.rows() != a.rows() || d.cols() != b.cols())
    throw DimensionMismatch("block_upper coupler must be d1 x d2");
  const int n = a.rows() + b.rows();
  if (n > kMaxDim)
    throw SizeOverflow("block matrix exceeds the maximum dimension");
  Matrix m(n, n);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) m.at(i, a.cols() + j) = d.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

}  // namespace mirs
