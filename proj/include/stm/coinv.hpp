#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stm/laurent.hpp"
#include "stm/linalg.hpp"
#include "stm/rational.hpp"
#include "stm/rootdata.hpp"

namespace stm {

struct DegenerateAveraging : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Monomial = std::vector<int>;  // exponent vector

// Polynomial in the simple roots x_i = alpha_i. Internal degree of x_i is 2.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i);
  static Poly monomial(const Monomial& m, const Rational& c = 1);

  [[nodiscard]] int nvars() const { return nvars_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }
  // Polynomial degree of the top term, -1 for zero.
  [[nodiscard]] int degree() const;
  [[nodiscard]] Poly homogeneous_part(int degree) const;
  [[nodiscard]] Rational coeff(const Monomial& m) const;
  [[nodiscard]] Rational eval(const std::vector<Rational>& point) const;
  [[nodiscard]] Poly partial(int i) const;

  // w . f where column j of `m` is the image of x_j.
  [[nodiscard]] Poly act(const IntMatrix& m) const;
  // f / x_i, requires every term to contain x_i.
  [[nodiscard]] Poly divide_by_variable(int i) const;

  void add_term(const Monomial& m, const Rational& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  int nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

// Monomials of polynomial degree d in n variables, ascending lexicographic order.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

// Divided difference (f - s f) / alpha_s.
Poly demazure(const WeylGroup& W, int s, const Poly& f);
Poly reflect(const WeylGroup& W, int s, const Poly& f);
// alpha_s / 2
Poly half_root(int nvars, int s);

// Homogeneous invariants of internal degrees 2 d_1, ..., 2 d_rank.
std::vector<Poly> fundamental_invariants(const WeylGroup& W);

// Subspace of C spanned by the columns of `basis` (coordinates in C).
struct Subalgebra {
  Matrix basis;
  std::vector<int> degrees;  // internal degrees of the columns
  LaurentPoly hilbert;
};

// C = Q[x_1..x_n] / (invariants of positive degree).
class CoinvariantAlgebra {
 public:
  explicit CoinvariantAlgebra(const WeylGroup& W);

  [[nodiscard]] const WeylGroup& group() const { return W_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] int top_degree() const { return top_; }  // polynomial degree
  [[nodiscard]] const std::vector<Poly>& invariants() const { return invariants_; }
  [[nodiscard]] const std::vector<Monomial>& basis() const { return basis_; }
  [[nodiscard]] int degree(std::size_t i) const;  // internal degree of basis element i
  [[nodiscard]] LaurentPoly hilbert() const;

  [[nodiscard]] std::vector<Rational> normal_form(const Poly& f) const;
  [[nodiscard]] Poly lift(const std::vector<Rational>& coords) const;
  // Column j = normal form of f * basis_j.
  [[nodiscard]] Matrix multiplication_matrix(const Poly& f) const;
  [[nodiscard]] Matrix demazure_matrix(int s) const;
  [[nodiscard]] Matrix reflection_matrix(int s) const;

  // C^s, with every c written uniquely as a + b P_s.
  [[nodiscard]] Subalgebra invariant_subring(int s) const;
  struct Split {
    std::vector<Rational> a, b;
  };
  [[nodiscard]] Split decompose(int s, const std::vector<Rational>& c) const;
  // C^{W_P}
  [[nodiscard]] Subalgebra partial_coinvariants(const std::vector<int>& parabolic) const;

 private:
  struct Piece {
    std::vector<Monomial> monomials;  // descending: column order for the reducer
    std::map<Monomial, std::size_t> column;
    RowReducer ideal;
    std::vector<std::size_t> basis_columns;  // ascending monomial order
    std::size_t offset = 0;                  // first global basis index
  };
  Subalgebra kernel_of(const std::vector<int>& simple) const;

  const WeylGroup& W_;
  int n_;
  int top_;
  std::vector<Poly> invariants_;
  std::vector<Piece> pieces_;
  std::vector<Monomial> basis_;
  std::vector<int> basis_degree_;
};

}  // namespace stm
