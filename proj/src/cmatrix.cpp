// SPDX-License-Identifier: Apache-2.0
#include "lris/cmatrix.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace lris {

namespace {

std::string shape_str(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

constexpr double kConditionGuard = 1e12;

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("CMatrix: entry count " +
                                std::to_string(data_.size()) +
                                " does not match shape " + shape_str(*this));
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix add: shape mismatch " +
                                shape_str(*this) + " vs " + shape_str(rhs));
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix sub: shape mismatch " +
                                shape_str(*this) + " vs " + shape_str(rhs));
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: dimension mismatch " + shape_str(a) +
                                " * " + shape_str(b));
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

CMatrix hermitian(const CMatrix& a) {
  CMatrix h(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h(j, i) = std::conj(a(i, j));
  return h;
}

LuFactors lu_decompose(const CMatrix& a, bool partial_pivot) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("lu_decompose: matrix not square, shape " +
                                shape_str(a));
  const std::size_t n = a.rows();
  LuFactors f;
  f.lu = a;
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    if (partial_pivot) {
      double best = std::abs(f.lu(k, k));
      for (std::size_t r = k + 1; r < n; ++r) {
        const double v = std::abs(f.lu(r, k));
        if (v > best) {
          best = v;
          piv = r;
        }
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      ++f.swap_count;
    }
    const cplx pivot = f.lu(k, k);
    f.pivots.push_back(pivot);
    if (pivot == cplx{}) continue;  // singular; remaining column stays zero
    for (std::size_t r = k + 1; r < n; ++r) {
      const cplx m = f.lu(r, k) / pivot;
      f.lu(r, k) = m;
      if (m == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(r, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

namespace {

double pivot_condition(const LuFactors& f) {
  double lo = HUGE_VAL, hi = 0.0;
  for (const cplx& p : f.pivots) {
    const double v = std::abs(p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == 0.0) return HUGE_VAL;
  return hi / lo;
}

[[noreturn]] void throw_singular(double cond) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", cond);
  throw std::runtime_error(std::string("singular matrix: condition estimate ") +
                           buf);
}

// Solves LU x = P b in place.
void lu_solve_vec(const LuFactors& f, std::vector<cplx>& x) {
  const std::size_t n = f.lu.rows();
  std::vector<cplx> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = x[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) b[i] -= f.lu(i, j) * b[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) b[i] -= f.lu(i, j) * b[j];
    b[i] /= f.lu(i, i);
  }
  x = std::move(b);
}

}  // namespace

CMatrix inverse(const CMatrix& a) {
  const LuFactors f = lu_decompose(a);
  const double cond = pivot_condition(f);
  if (!(cond < kConditionGuard)) throw_singular(cond);

  const std::size_t n = a.rows();
  CMatrix inv(n, n);
  std::vector<cplx> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), cplx{});
    col[j] = 1.0;
    lu_solve_vec(f, col);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

cplx det(const CMatrix& a) {
  const LuFactors f = lu_decompose(a);
  cplx d = (f.swap_count % 2 == 0) ? 1.0 : -1.0;
  for (const cplx& p : f.pivots) d *= p;
  return d;
}

CMatrix pseudo_inverse(const CMatrix& a) {
  if (a.rows() < a.cols())
    throw std::invalid_argument("pseudo_inverse: needs rows >= cols, got " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
  const CMatrix ah = hermitian(a);
  return inverse(ah * a) * ah;
}

std::vector<cplx> kron(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out;
  out.reserve(a.size() * b.size());
  for (const cplx& x : a)
    for (const cplx& y : b) out.push_back(x * y);
  return out;
}

CMatrix cholesky(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("cholesky: matrix not square, shape " +
                                shape_str(a));
  const std::size_t n = a.rows();
  CMatrix low(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= low(i, k) * std::conj(low(j, k));
      if (i == j) {
        const double d = s.real();
        if (!(d > 0.0) || std::abs(s.imag()) > 1e-9 * std::max(1.0, d))
          throw std::runtime_error("cholesky: matrix not positive definite");
        low(i, j) = std::sqrt(d);
      } else {
        low(i, j) = s / low(j, j).real();
      }
    }
  }
  return low;
}

std::vector<cplx> cholesky_solve(const CMatrix& low, const std::vector<cplx>& b) {
  const std::size_t n = low.rows();
  if (b.size() != n)
    throw std::invalid_argument("cholesky_solve: rhs length mismatch");
  std::vector<cplx> y(b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) y[i] -= low(i, j) * y[j];
    y[i] /= low(i, i).real();
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) y[i] -= std::conj(low(j, i)) * y[j];
    y[i] /= low(i, i).real();
  }
  return y;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const cplx& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

CMatrix drop_column(const CMatrix& a, std::size_t j) {
  if (j >= a.cols()) throw std::invalid_argument("drop_column: index out of range");
  CMatrix out(a.rows(), a.cols() - 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (k == j) continue;
      out(i, c++) = a(i, k);
    }
  }
  return out;
}

CMatrix drop_row_col(const CMatrix& a, std::size_t i) {
  if (i >= a.rows() || i >= a.cols())
    throw std::invalid_argument("drop_row_col: index out of range");
  CMatrix out(a.rows() - 1, a.cols() - 1);
  std::size_t r = 0;
  for (std::size_t x = 0; x < a.rows(); ++x) {
    if (x == i) continue;
    std::size_t c = 0;
    for (std::size_t y = 0; y < a.cols(); ++y) {
      if (y == i) continue;
      out(r, c++) = a(x, y);
    }
    ++r;
  }
  return out;
}

}  // namespace lris
