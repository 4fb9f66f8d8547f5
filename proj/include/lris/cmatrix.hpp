// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_CMATRIX_HPP
#define LRIS_CMATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace lris {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Dimensions here are tiny (antenna
/// counts), so the kernel favors explicit, checkable algorithms over
/// BLAS-style performance.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) {
    return CMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// Exact complex matrix product. Throws std::invalid_argument naming both
/// shapes on inner-dimension mismatch.
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix hermitian(const CMatrix& a);

/// LU factorization (Doolittle). With `partial_pivot` the row of largest
/// magnitude is chosen per column; without it rows are taken in natural
/// order, which for Hermitian positive definite inputs yields pivots of
/// positive real part.
struct LuFactors {
  CMatrix lu;                      // packed L (unit diagonal) and U
  std::vector<std::size_t> perm;   // row permutation
  int swap_count = 0;
  std::vector<cplx> pivots;        // diagonal of U in elimination order
};
LuFactors lu_decompose(const CMatrix& a, bool partial_pivot = true);

/// Inverse via pivoted LU. Rejects inputs whose pivot-ratio condition
/// estimate max|u_ii|/min|u_ii| exceeds 1e12 with a "singular matrix"
/// error carrying the estimate.
CMatrix inverse(const CMatrix& a);

/// Determinant via pivoted LU; returns 0 for singular input.
cplx det(const CMatrix& a);

/// Moore-Penrose pseudoinverse (A^H A)^{-1} A^H for full-column-rank tall
/// matrices.
CMatrix pseudo_inverse(const CMatrix& a);

/// Kronecker product of column vectors.
std::vector<cplx> kron(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Cholesky factor L (lower) of a Hermitian positive definite matrix.
/// Throws std::runtime_error if a pivot is not strictly positive.
CMatrix cholesky(const CMatrix& a);

/// Solves A x = b given the Cholesky factor L of A.
std::vector<cplx> cholesky_solve(const CMatrix& chol_lower,
                                 const std::vector<cplx>& b);

double frobenius_norm(const CMatrix& a);

/// Deletes column j.
CMatrix drop_column(const CMatrix& a, std::size_t j);

/// Deletes row i and column i (principal minor block).
CMatrix drop_row_col(const CMatrix& a, std::size_t i);

}  // namespace lris

#endif  // LRIS_CMATRIX_HPP
