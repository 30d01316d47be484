#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "stm/linalg.hpp"

using namespace stm;

namespace {
Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}
}  // namespace

TEST_CASE("nullspace vectors are killed and rank-nullity holds") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix a = random_matrix(rng, 4, 6, -1, 1);
    auto ns = nullspace(a);
    CHECK(rank(a) + ns.size() == 6);
    for (const auto& v : ns) {
      Matrix col(6, 1);
      for (std::size_t i = 0; i < 6; ++i) col(i, 0) = v[i];
      CHECK((a * col).is_zero());
    }
  }
}

TEST_CASE("inverse and solve") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_matrix(rng, 5, 5, -3, 3);
    auto inv = inverse(a);
    if (!inv) {
      CHECK(rank(a) < 5);
      continue;
    }
    CHECK((a * *inv).is_identity());
    std::vector<Rational> b{1, 2, 3, 4, 5};
    auto x = solve(a, b);
    REQUIRE(x);
    Matrix xc(5, 1);
    for (std::size_t i = 0; i < 5; ++i) xc(i, 0) = (*x)[i];
    Matrix ax = a * xc;
    for (std::size_t i = 0; i < 5; ++i) CHECK(ax(i, 0) == b[i]);
  }
}

TEST_CASE("row reducer agrees with dense rank and kernel") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_matrix(rng, 5, 7, -2, 2);
    RowReducer rr(true);
    for (std::size_t i = 0; i < 5; ++i) {
      std::vector<Rational> row(7);
      for (std::size_t j = 0; j < 7; ++j) row[j] = a(i, j);
      rr.add(to_sparse(row));
    }
    CHECK(rr.rank() == rank(a));
    auto ker = rr.kernel(7);
    CHECK(ker.size() == 7 - rank(a));
    for (const auto& k : ker)
      for (std::size_t i = 0; i < 5; ++i) {
        Rational s;
        for (const auto& [c, x] : k) s += a(i, c) * x;
        CHECK(s.is_zero());
      }
    // coordinates reproduce the vector
    std::vector<Rational> comb(7);
    for (std::size_t j = 0; j < 7; ++j) comb[j] = a(0, j) * Rational(2) - a(3, j);
    auto c = rr.coordinates(to_sparse(comb));
    REQUIRE(c);
    std::vector<Rational> back(7);
    for (const auto& [i, x] : *c)
      for (std::size_t j = 0; j < 7; ++j) back[j] += x * a(i, j);
    CHECK(back == comb);
  }
}

TEST_CASE("univariate polynomials") {
  // (t-1)(t+2)(2t-3)^2
  UPoly p = UPoly({Rational(-1), Rational(1)}) * UPoly({Rational(2), Rational(1)}) *
            UPoly({Rational(-3), Rational(2)}) * UPoly({Rational(-3), Rational(2)});
  auto roots = rational_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == Rational(-2));
  CHECK(roots[1] == Rational(1));
  CHECK(roots[2] == Rational(3, 2));
  CHECK(rational_roots(UPoly({Rational(-2), Rational(0), Rational(1)})).empty());
  UPoly a({Rational(-1), Rational(0), Rational(1)}), b({Rational(1), Rational(1)});
  auto g = ext_gcd(a, b);
  CHECK(g.g == UPoly({Rational(1), Rational(1)}));
  CHECK(g.s * a + g.t * b == g.g);
}
