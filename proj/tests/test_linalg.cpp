#include <random>

#include "doctest.h"
#include "matrix.hpp"

using namespace presilt;

namespace {
Matrix random_matrix(const Fp& F, std::mt19937_64& rng, int r, int c) {
  Matrix m(r, c);
  for (u32& v : m.a) v = static_cast<u32>(rng() % F.p);
  return m;
}
}  // namespace

TEST_CASE("field arithmetic") {
  Fp F(1000003);
  CHECK(F.add(1000002, 5) == 4);
  CHECK(F.mul(F.inv(17), 17) == 1);
  CHECK(F.sub(3, 5) == 1000001);
  CHECK(Fp::is_prime(1000003));
  CHECK(!Fp::is_prime(1000001));  // 101 * 9901
  CHECK_THROWS_AS(Fp(1000001), Error);
}

TEST_CASE("rref is idempotent and rank bounded") {
  Fp F(1000003);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
    Matrix m = random_matrix(F, rng, r, c);
    Matrix m1 = m;
    rref(F, m1);
    Matrix m2 = m1;
    rref(F, m2);
    CHECK(m1 == m2);
    CHECK(mat_rank(F, m) <= std::min(r, c));
  }
}

TEST_CASE("null space and solve agree with definitions") {
  Fp F(1000003);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
    Matrix A = random_matrix(F, rng, r, c);
    Matrix N = null_space(F, A);
    CHECK(mat_mul(F, A, N).is_zero());
    CHECK(N.cols == c - mat_rank(F, A));
    // A * x = A * (random vector) is always solvable
    Matrix v = random_matrix(F, rng, c, 1);
    Matrix b = mat_mul(F, A, v);
    std::vector<u32> rhs(r);
    for (int i = 0; i < r; ++i) rhs[i] = b.at(i, 0);
    std::vector<u32> x;
    CHECK(solve(F, A, rhs, x));
    Matrix xm(c, 1);
    for (int i = 0; i < c; ++i) xm.at(i, 0) = x[i];
    CHECK(mat_mul(F, A, xm) == b);
  }
}

TEST_CASE("inverse") {
  Fp F(97);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    Matrix A = random_matrix(F, rng, n, n);
    if (mat_rank(F, A) < n) continue;
    CHECK(mat_mul(F, A, mat_inverse(F, A)) == Matrix::identity(n));
  }
}

TEST_CASE("row span membership") {
  Fp F(101);
  RowSpan s(3);
  CHECK(s.add(F, {1, 2, 3}));
  CHECK(s.add(F, {0, 1, 1}));
  CHECK(!s.add(F, {1, 3, 4}));
  CHECK(s.contains(F, {2, 4, 6}));
  CHECK(!s.contains(F, {0, 0, 1}));
  CHECK(s.dim() == 2);
}
