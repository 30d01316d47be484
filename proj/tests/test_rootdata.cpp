#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <deque>
#include <set>

#include "stm/rootdata.hpp"

using namespace stm;

namespace {

struct Case {
  CartanType t;
  int n;
  std::size_t roots;  // |Phi|
  long long order;
};

const std::vector<Case> kAll = {
    {CartanType::A, 1, 2, 2},   {CartanType::A, 2, 6, 6},   {CartanType::A, 3, 12, 24},
    {CartanType::A, 4, 20, 120}, {CartanType::B, 2, 8, 8},   {CartanType::B, 3, 18, 48},
    {CartanType::C, 3, 18, 48}, {CartanType::D, 4, 24, 192}, {CartanType::G, 2, 12, 12},
};

// Brute force: x <= y iff some subword of the canonical word of y multiplies to x
// with length equal to the subword length.
bool subword_oracle(const WeylGroup& W, WeylElt x, WeylElt y) {
  const Word& w = W.word(y);
  for (unsigned mask = 0; mask < (1u << w.size()); ++mask) {
    Word sub;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (mask & (1u << i)) sub.push_back(w[i]);
    if (sub.size() != static_cast<std::size_t>(W.length(x))) continue;
    if (W.from_word(sub) == x && W.normalize(sub)) return true;
  }
  return false;
}

int braid_order(const RootSystem& rs, int i, int j) {
  switch (rs.cartan[i][j] * rs.cartan[j][i]) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    default: return 6;
  }
}

// All reduced words of an element reachable by braid moves.
std::set<Word> braid_class(const RootSystem& rs, const Word& start) {
  std::set<Word> seen{start};
  std::deque<Word> todo{start};
  while (!todo.empty()) {
    Word w = todo.front();
    todo.pop_front();
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j) {
        if (i == j) continue;
        const int m = braid_order(rs, i, j);
        for (std::size_t p = 0; p + m <= w.size(); ++p) {
          bool match = true;
          for (int k = 0; k < m; ++k)
            if (w[p + k] != (k % 2 ? j : i)) match = false;
          if (!match) continue;
          Word v = w;
          for (int k = 0; k < m; ++k) v[p + k] = (k % 2 ? i : j);
          if (seen.insert(v).second) todo.push_back(v);
        }
      }
  }
  return seen;
}

}  // namespace

TEST_CASE("root counts, degrees and group orders") {
  for (const auto& c : kAll) {
    auto rs = build_root_system(c.t, c.n);
    CHECK(2 * rs.positive_roots.size() == c.roots);
    CHECK(rs.weyl_order() == c.order);
    WeylGroup W(rs);
    CHECK(static_cast<long long>(W.size()) == c.order);
    CHECK(W.length(W.longest()) == static_cast<int>(rs.positive_roots.size()));
    int zero = 0;
    for (WeylElt w : W.elements()) {
      if (W.length(w) == 0) ++zero;
      CHECK(W.length(w) == static_cast<int>(W.word(w).size()));
      CHECK(W.length(w) == W.inversion_count(w));
    }
    CHECK(zero == 1);
  }
}

TEST_CASE("unsupported types are rejected") {
  CHECK_THROWS_AS(build_root_system(CartanType::A, 5), UnsupportedType);
  CHECK_THROWS_AS(build_root_system(CartanType::G, 3), UnsupportedType);
  CHECK_THROWS_AS(build_root_system(CartanType::D, 3), UnsupportedType);
  CHECK_THROWS_AS(parse_cartan_type("E"), UnsupportedType);
}

TEST_CASE("roots are closed under simple reflections up to sign") {
  for (const auto& c : kAll) {
    auto rs = build_root_system(c.t, c.n);
    std::set<std::vector<int>> pos(rs.positive_roots.begin(), rs.positive_roots.end());
    for (int i = 0; i < rs.rank; ++i)
      for (const auto& r : rs.positive_roots) {
        std::vector<int> img = r;
        // s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
        int coroot = 0;
        for (int j = 0; j < rs.rank; ++j) coroot += rs.cartan[i][j] * r[j];
        img[i] -= coroot;
        std::vector<int> neg = img;
        for (auto& x : neg) x = -x;
        CHECK((pos.count(img) == 1 || pos.count(neg) == 1));
      }
  }
}

TEST_CASE("poincare polynomials") {
  auto product = [](const std::vector<int>& degs) {
    LaurentPoly p(1);
    for (int d : degs) {
      LaurentPoly f;
      for (int k = 0; k < d; ++k) f.add_term(k, 1);
      p *= f;
    }
    return p;
  };
  for (const auto& c : kAll) {
    WeylGroup W(build_root_system(c.t, c.n));
    CHECK(W.poincare_polynomial() == product(W.root_system().fundamental_degrees));
  }
  WeylGroup A1(build_root_system(CartanType::A, 1));
  CHECK(A1.poincare_polynomial().pretty() == "1+q");
  WeylGroup A2(build_root_system(CartanType::A, 2));
  CHECK(A2.poincare_polynomial().pretty() == "1+2q+2q^2+q^3");
  WeylGroup B2(build_root_system(CartanType::B, 2));
  CHECK(B2.poincare_polynomial().pretty() == "1+2q+2q^2+2q^3+q^4");
}

TEST_CASE("bruhat order matches the subword oracle") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{
           {CartanType::A, 2}, {CartanType::A, 3}, {CartanType::B, 2}, {CartanType::G, 2}, {CartanType::B, 3}}) {
    WeylGroup W(build_root_system(t, n));
    for (WeylElt x : W.elements())
      for (WeylElt y : W.elements()) CHECK(W.bruhat_leq(x, y) == subword_oracle(W, x, y));
  }
  WeylGroup A2(build_root_system(CartanType::A, 2));
  CHECK(A2.bruhat_leq(A2.parse("1"), A2.parse("1,2,1")));
  CHECK_FALSE(A2.bruhat_leq(A2.parse("1,2"), A2.parse("2,1")));
  for (WeylElt w : A2.elements()) CHECK(A2.bruhat_leq(A2.identity(), w));
}

TEST_CASE("bruhat covers have length difference one") {
  WeylGroup W(build_root_system(CartanType::B, 3));
  for (WeylElt x : W.elements())
    for (WeylElt y : W.elements()) {
      if (x == y || !W.bruhat_leq(x, y)) continue;
      CHECK(W.length(x) < W.length(y));
      bool cover = true;
      for (WeylElt z : W.elements())
        if (z != x && z != y && W.bruhat_leq(x, z) && W.bruhat_leq(z, y)) cover = false;
      if (cover) CHECK(W.length(y) - W.length(x) == 1);
    }
}

TEST_CASE("canonical words are braid-class minima") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{
           {CartanType::A, 2}, {CartanType::A, 3}, {CartanType::B, 2}, {CartanType::B, 3}, {CartanType::C, 3},
           {CartanType::G, 2}}) {
    WeylGroup W(build_root_system(t, n));
    for (WeylElt w : W.elements()) {
      auto cls = braid_class(W.root_system(), W.word(w));
      CHECK(*cls.begin() == W.word(w));
      for (const Word& r : cls) {
        auto norm = W.normalize(r);
        REQUIRE(norm);
        CHECK(*norm == W.word(w));
      }
    }
  }
}

TEST_CASE("demazure product") {
  WeylGroup A1(build_root_system(CartanType::A, 1));
  CHECK(A1.demazure_product(Word{}) == A1.identity());
  CHECK(A1.demazure_product(Word{0, 0}) == A1.simple(0));
  WeylGroup A2(build_root_system(CartanType::A, 2));
  CHECK(A2.demazure_product(Word{0, 1, 0, 1}) == A2.longest());
  for (WeylElt w : A2.elements()) CHECK(A2.demazure_product(A2.word(w)) == w);
}

TEST_CASE("parabolic quotients") {
  WeylGroup A2(build_root_system(CartanType::A, 2));
  CHECK(A2.parabolic_quotient({}).size() == 6);
  auto q = A2.parabolic_quotient({0});
  REQUIRE(q.size() == 3);
  CHECK(A2.length(q[0]) == 0);
  CHECK(A2.length(q[1]) == 1);
  CHECK(A2.length(q[2]) == 2);
  WeylGroup A3(build_root_system(CartanType::A, 3));
  auto q3 = A3.parabolic_quotient({0, 2});
  CHECK(q3.size() == 6);
  // each coset has a unique minimum: |W^P| |W_P| = |W|
  CHECK(q3.size() * 4 == A3.size());
}

TEST_CASE("serialization and group tables") {
  WeylGroup A3(build_root_system(CartanType::A, 3));
  WeylElt w = A3.parse("2,1,3,2");
  CHECK(A3.format(w) == "2,1,3,2");
  CHECK(A3.format(A3.identity()) == "e");
  CHECK(A3.parse("e") == A3.identity());
  CHECK_THROWS((void)A3.parse("1,5"));
  CHECK_THROWS((void)A3.parse("1,x"));
  for (WeylElt x : A3.elements()) {
    CHECK(A3.multiply(x, A3.inverse(x)) == A3.identity());
    CHECK(A3.length(A3.inverse(x)) == A3.length(x));
    for (int s = 0; s < 3; ++s) CHECK(A3.mul_left(s, x) == A3.multiply(A3.simple(s), x));
  }
}
