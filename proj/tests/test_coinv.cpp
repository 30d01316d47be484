#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stm/coinv.hpp"

using namespace stm;

namespace {

LaurentPoly expected_hilbert(const RootSystem& rs) {
  LaurentPoly p(1);
  for (int d : rs.fundamental_degrees) {
    LaurentPoly f;
    for (int k = 0; k < d; ++k) f.add_term(2 * k, 1);
    p *= f;
  }
  return p;
}

std::vector<Rational> unit(std::size_t n, std::size_t i) {
  std::vector<Rational> v(n, Rational(0));
  v[i] = 1;
  return v;
}

std::vector<Rational> apply_matrix(const Matrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace

TEST_CASE("fundamental invariants") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{
           {CartanType::A, 1}, {CartanType::A, 2}, {CartanType::A, 3}, {CartanType::B, 2}, {CartanType::G, 2},
           {CartanType::B, 3}, {CartanType::C, 3}, {CartanType::D, 4}}) {
    WeylGroup W(build_root_system(t, n));
    auto inv = fundamental_invariants(W);
    REQUIRE(inv.size() == static_cast<std::size_t>(n));
    auto degs = W.root_system().fundamental_degrees;
    std::sort(degs.begin(), degs.end());
    for (std::size_t i = 0; i < inv.size(); ++i) {
      CHECK(inv[i].degree() == degs[i]);
      CHECK(inv[i].homogeneous_part(degs[i]) == inv[i]);
      for (int s = 0; s < n; ++s) CHECK(reflect(W, s, inv[i]) == inv[i]);
    }
  }
  WeylGroup A1(build_root_system(CartanType::A, 1));
  auto a1 = fundamental_invariants(A1);
  CHECK(a1[0] == Poly::monomial({2}));
}

TEST_CASE("dimension and hilbert series of C") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{
           {CartanType::A, 1}, {CartanType::A, 2}, {CartanType::A, 3}, {CartanType::B, 2}, {CartanType::G, 2}}) {
    WeylGroup W(build_root_system(t, n));
    CoinvariantAlgebra C(W);
    CHECK(C.dim() == W.size());
    CHECK(C.hilbert() == expected_hilbert(W.root_system()));
  }
  WeylGroup A1(build_root_system(CartanType::A, 1));
  CoinvariantAlgebra C1(A1);
  CHECK(C1.hilbert().pretty() == "1+q^2");
  CHECK(C1.basis()[1] == Monomial{1});
}

TEST_CASE("W acts by automorphisms on the generators") {
  WeylGroup W(build_root_system(CartanType::B, 2));
  for (WeylElt w : W.elements())
    for (int j = 0; j < 2; ++j) {
      Poly img = Poly::variable(2, j).act(W.matrix(w));
      for (int k = 0; k < 2; ++k) CHECK(img.coeff(Monomial{k == 0, k == 1}) == Rational(W.matrix(w)[k][j]));
    }
}

TEST_CASE("multiplication is associative and graded") {
  WeylGroup W(build_root_system(CartanType::A, 3));
  CoinvariantAlgebra C(W);
  std::vector<Matrix> mult;
  for (std::size_t i = 0; i < C.dim(); ++i) mult.push_back(C.multiplication_matrix(Poly::monomial(C.basis()[i])));
  for (std::size_t a = 0; a < C.dim(); ++a)
    for (std::size_t b = 0; b < C.dim(); ++b) {
      auto ab = apply_matrix(mult[a], unit(C.dim(), b));
      for (std::size_t k = 0; k < C.dim(); ++k)
        if (!ab[k].is_zero()) CHECK(C.degree(k) == C.degree(a) + C.degree(b));
      for (std::size_t c = 0; c < C.dim(); c += 5) {
        auto lhs = apply_matrix(C.multiplication_matrix(C.lift(ab)), unit(C.dim(), c));
        auto bc = apply_matrix(mult[b], unit(C.dim(), c));
        auto rhs = apply_matrix(mult[a], bc);
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("divided differences") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{
           {CartanType::A, 1}, {CartanType::A, 2}, {CartanType::A, 3}, {CartanType::B, 2}, {CartanType::G, 2}}) {
    WeylGroup W(build_root_system(t, n));
    CoinvariantAlgebra C(W);
    const auto& rs = W.root_system();
    std::vector<Matrix> d, r, m;
    for (int s = 0; s < n; ++s) {
      d.push_back(C.demazure_matrix(s));
      r.push_back(C.reflection_matrix(s));
    }
    for (int s = 0; s < n; ++s) {
      CHECK((d[s] * d[s]).is_zero());
      CHECK(demazure(W, s, Poly::constant(n, 1)).is_zero());
      CHECK(demazure(W, s, Poly::variable(n, s)) == Poly::constant(n, 2));
      CHECK(demazure(W, s, half_root(n, s)) == Poly::constant(n, 1));
      // image is s-invariant
      CHECK((r[s] * d[s]) == d[s]);
      // lowers degree by 2
      for (std::size_t j = 0; j < C.dim(); ++j)
        for (std::size_t i = 0; i < C.dim(); ++i)
          if (!d[s](i, j).is_zero()) CHECK(C.degree(i) == C.degree(j) - 2);
    }
    // braid relations
    for (int s = 0; s < n; ++s)
      for (int u = s + 1; u < n; ++u) {
        int prod = rs.cartan[s][u] * rs.cartan[u][s];
        int mst = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
        Matrix lhs = Matrix::identity(C.dim()), rhs = Matrix::identity(C.dim());
        for (int k = 0; k < mst; ++k) {
          lhs = lhs * d[k % 2 ? u : s];
          rhs = rhs * d[k % 2 ? s : u];
        }
        CHECK(lhs == rhs);
      }
    // twisted Leibniz on basis pairs
    for (int s = 0; s < n; ++s)
      for (std::size_t a = 0; a < C.dim(); ++a)
        for (std::size_t b = 0; b < C.dim(); ++b) {
          Poly f = Poly::monomial(C.basis()[a]), g = Poly::monomial(C.basis()[b]);
          auto lhs = C.normal_form(demazure(W, s, f * g));
          auto rhs = C.normal_form(demazure(W, s, f) * g + reflect(W, s, f) * demazure(W, s, g));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("invariant subrings and the free basis {1, P_s}") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{
           {CartanType::A, 1}, {CartanType::A, 2}, {CartanType::B, 2}, {CartanType::A, 3}}) {
    WeylGroup W(build_root_system(t, n));
    CoinvariantAlgebra C(W);
    for (int s = 0; s < n; ++s) {
      Subalgebra sub = C.invariant_subring(s);
      CHECK(sub.hilbert * (LaurentPoly(1) + LaurentPoly::monomial(2)) == C.hilbert());
      CHECK(C.hilbert().divide_exact(LaurentPoly(1) + LaurentPoly::monomial(2)) == sub.hilbert);
      Matrix d = C.demazure_matrix(s);
      Matrix ps = C.multiplication_matrix(half_root(n, s));
      for (std::size_t j = 0; j < C.dim(); ++j) {
        auto c = unit(C.dim(), j);
        auto split = C.decompose(s, c);
        CHECK(apply_matrix(d, split.a) == std::vector<Rational>(C.dim(), Rational(0)));
        CHECK(apply_matrix(d, split.b) == std::vector<Rational>(C.dim(), Rational(0)));
        auto back = apply_matrix(ps, split.b);
        for (std::size_t i = 0; i < C.dim(); ++i) back[i] += split.a[i];
        CHECK(back == c);
      }
    }
  }
  WeylGroup A1(build_root_system(CartanType::A, 1));
  CoinvariantAlgebra C1(A1);
  CHECK(C1.invariant_subring(0).basis.cols() == 1);
  auto split = C1.decompose(0, {Rational(0), Rational(1)});
  CHECK(split.a == std::vector<Rational>{Rational(0), Rational(0)});
  CHECK(split.b == std::vector<Rational>{Rational(2), Rational(0)});
  auto one = C1.decompose(0, {Rational(1), Rational(0)});
  CHECK(one.a == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(one.b == std::vector<Rational>{Rational(0), Rational(0)});
  WeylGroup A2(build_root_system(CartanType::A, 2));
  CoinvariantAlgebra C2(A2);
  CHECK(C2.invariant_subring(0).basis.cols() == 3);
}

TEST_CASE("partial coinvariants") {
  WeylGroup A2(build_root_system(CartanType::A, 2));
  CoinvariantAlgebra C2(A2);
  CHECK(C2.partial_coinvariants({}).hilbert == C2.hilbert());
  CHECK(C2.partial_coinvariants({0}).hilbert.pretty() == "1+q^2+q^4");
  WeylGroup A3(build_root_system(CartanType::A, 3));
  CoinvariantAlgebra C3(A3);
  auto sub = C3.partial_coinvariants({0, 2});
  CHECK(sub.basis.cols() == 6);
  LaurentPoly expect;
  for (WeylElt w : A3.parabolic_quotient({0, 2})) expect.add_term(2 * A3.length(w), 1);
  CHECK(sub.hilbert == expect);
  WeylGroup B2(build_root_system(CartanType::B, 2));
  CoinvariantAlgebra CB(B2);
  for (int s = 0; s < 2; ++s) {
    LaurentPoly e;
    for (WeylElt w : B2.parabolic_quotient({s})) e.add_term(2 * B2.length(w), 1);
    CHECK(CB.partial_coinvariants({s}).hilbert == e);
  }
}
