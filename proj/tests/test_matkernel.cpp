// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "lris/cmatrix.hpp"
#include "lris/rng.hpp"
#include "oracles.hpp"

using namespace lris;
using oracles::naive_matmul;
using oracles::random_hpd;
using oracles::random_matrix;

namespace {
double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}
}  // namespace

TEST_CASE("matmul identity and scalar cases") {
  CounterRng rng(11, 0);
  const CMatrix a = random_matrix(2, 3, rng);
  CHECK(max_abs_diff(CMatrix::identity(2) * a, a) == 0.0);

  CMatrix s1(1, 1, {cplx(2.0, 1.0)});
  CMatrix s2(1, 1, {cplx(3.0, 0.0)});
  const CMatrix prod = s1 * s2;
  CHECK(prod(0, 0) == cplx(6.0, 3.0));
}

TEST_CASE("matmul agrees with the triple-loop oracle") {
  CounterRng rng(12, 0);
  const CMatrix a = random_matrix(3, 4, rng);
  const CMatrix b = random_matrix(4, 2, rng);
  CHECK(max_abs_diff(a * b, naive_matmul(a, b)) < 1e-13);
}

TEST_CASE("matmul rejects mismatched shapes naming both") {
  const CMatrix a(3, 4), b(5, 2);
  CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("3x4"),
                       std::invalid_argument);
  try {
    matmul(a, b);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("5x2") != std::string::npos);
  }
}

TEST_CASE("hermitian basics and involution") {
  CMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  CHECK(max_abs_diff(hermitian(d), d) == 0.0);

  CMatrix j(1, 1, {cplx(0.0, 1.0)});
  CHECK(hermitian(j)(0, 0) == cplx(0.0, -1.0));

  CounterRng rng(13, 0);
  const CMatrix a = random_matrix(5, 3, rng);
  CHECK(max_abs_diff(hermitian(hermitian(a)), a) == 0.0);
}

TEST_CASE("hermitian of a product reverses factors") {
  CounterRng rng(14, 0);
  const CMatrix a = random_matrix(3, 4, rng);
  const CMatrix b = random_matrix(4, 5, rng);
  CHECK(max_abs_diff(hermitian(a * b), hermitian(b) * hermitian(a)) < 1e-13);
}

TEST_CASE("hermitian products satisfy conjugate symmetry") {
  CounterRng rng(15, 0);
  const CMatrix a = random_matrix(6, 4, rng);
  const CMatrix g = hermitian(a) * a;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      CHECK(std::abs(g(i, j) - std::conj(g(j, i))) <
            1e-12 * std::max(1.0, std::abs(g(i, j))));
}

TEST_CASE("inverse of diagonal and identity") {
  CMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const CMatrix inv = inverse(d);
  CHECK(std::abs(inv(0, 0) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(inv(1, 1) - cplx(0.25, 0.0)) < 1e-15);

  const CMatrix eye = CMatrix::identity(5);
  CHECK(max_abs_diff(inverse(eye), eye) < 1e-15);
}

TEST_CASE("inverse residual on random HPD input") {
  CounterRng rng(16, 0);
  const CMatrix a = random_hpd(4, rng);
  const CMatrix r = a * inverse(a) - CMatrix::identity(4);
  CHECK(frobenius_norm(r) < 1e-9);
}

TEST_CASE("inverse rejects singular input with condition estimate") {
  CMatrix s(2, 2);
  s(0, 0) = 1.0;
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  s(1, 1) = 1.0;
  CHECK_THROWS_WITH_AS(inverse(s), doctest::Contains("singular matrix"),
                       std::runtime_error);
}

TEST_CASE("det basics and cofactor oracle") {
  CHECK(std::abs(det(CMatrix::identity(3)) - cplx(1.0, 0.0)) < 1e-15);

  CMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(std::abs(det(d) - cplx(6.0, 0.0)) < 1e-15);

  CounterRng rng(17, 0);
  const CMatrix a = random_matrix(4, 4, rng);
  const cplx ref = oracles::cofactor_det(a);
  CHECK(std::abs(det(a) - ref) < 1e-10 * std::abs(ref));
}

TEST_CASE("det is multiplicative") {
  CounterRng rng(18, 0);
  for (int t = 0; t < 10; ++t) {
    const CMatrix a = random_matrix(4, 4, rng);
    const CMatrix b = random_matrix(4, 4, rng);
    const cplx lhs = det(a * b);
    const cplx rhs = det(a) * det(b);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));
  }
}

TEST_CASE("unpivoted LU of HPD matrices has positive-real pivots") {
  CounterRng rng(19, 0);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = random_hpd(5, rng);
    const LuFactors f = lu_decompose(a, /*partial_pivot=*/false);
    for (const cplx& piv : f.pivots) CHECK(piv.real() > 0.0);
  }
}

TEST_CASE("pseudo_inverse equals inverse for square input") {
  CounterRng rng(20, 0);
  const CMatrix a = random_hpd(3, rng);
  CHECK(max_abs_diff(pseudo_inverse(a), inverse(a)) < 1e-9);
}

TEST_CASE("pseudo_inverse least-squares row for [1;1]") {
  CMatrix a(2, 1);
  a(0, 0) = 1.0;
  a(1, 0) = 1.0;
  const CMatrix w = pseudo_inverse(a);
  CHECK(w.rows() == 1);
  CHECK(w.cols() == 2);
  CHECK(std::abs(w(0, 0) - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(w(0, 1) - cplx(0.5, 0.0)) < 1e-14);
}

TEST_CASE("pseudo_inverse left-inverse residual on random tall matrix") {
  CounterRng rng(21, 0);
  const CMatrix a = random_matrix(6, 3, rng);
  const CMatrix r = pseudo_inverse(a) * a - CMatrix::identity(3);
  CHECK(frobenius_norm(r) < 1e-9);
}

TEST_CASE("pseudo_inverse rejects rank-deficient input") {
  CMatrix a(3, 2);
  a(0, 0) = 1.0;
  a(1, 0) = 2.0;
  a(2, 0) = 3.0;
  a(0, 1) = 2.0;
  a(1, 1) = 4.0;
  a(2, 1) = 6.0;
  CHECK_THROWS_WITH_AS(pseudo_inverse(a), doctest::Contains("singular"),
                       std::runtime_error);
}

TEST_CASE("kron vectors") {
  CHECK(kron({cplx(1.0)}, {cplx(1.0), cplx(1.0)}) ==
        std::vector<cplx>{cplx(1.0), cplx(1.0)});
  const auto v = kron({cplx(1.0), cplx(2.0)}, {cplx(3.0), cplx(4.0)});
  CHECK(v == std::vector<cplx>{cplx(3.0), cplx(4.0), cplx(6.0), cplx(8.0)});
  CHECK(kron(std::vector<cplx>(4), std::vector<cplx>(8)).size() == 32);
}

TEST_CASE("cholesky solve matches inverse") {
  CounterRng rng(22, 0);
  const CMatrix a = random_hpd(4, rng);
  const CMatrix low = cholesky(a);
  std::vector<cplx> b(4);
  for (auto& v : b) v = rng.cgaussian(1.0);
  const auto x = cholesky_solve(low, b);
  const CMatrix inv = inverse(a);
  for (std::size_t i = 0; i < 4; ++i) {
    cplx ref{};
    for (std::size_t j = 0; j < 4; ++j) ref += inv(i, j) * b[j];
    CHECK(std::abs(x[i] - ref) < 1e-10);
  }
}
