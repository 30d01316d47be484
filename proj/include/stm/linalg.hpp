#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stm/rational.hpp"

namespace stm {

// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  [[nodiscard]] Rational trace() const;
  // Row-major entries; used for flattening matrices into vectors.
  [[nodiscard]] const std::vector<Rational>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Rref rref(Matrix m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}, each vector of length m.cols().
std::vector<std::vector<Rational>> nullspace(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b);
Matrix matrix_power(const Matrix& m, unsigned exponent);

// Sparse vector, entries sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

SparseVec to_sparse(const std::vector<Rational>& dense);
SparseVec to_sparse(const Matrix& m);  // row-major flattening

// Incrementally maintained echelon basis of a subspace of Q^n. Each stored row
// remembers which combination of the inserted vectors produced it, so the
// reducer can also express vectors of the span in terms of the inputs.
class RowReducer {
 public:
  explicit RowReducer(bool track = false) : track_(track) {}

  // Inserts a vector; returns true when it enlarged the span.
  bool add(SparseVec v);
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] std::size_t inserted() const { return inserted_; }
  [[nodiscard]] bool is_pivot(std::size_t column) const { return rows_.count(column) != 0; }
  [[nodiscard]] bool contains(SparseVec v) const;
  // v with every pivot column eliminated.
  [[nodiscard]] SparseVec reduced(SparseVec v) const {
    reduce(v, nullptr);
    return v;
  }
  // Coefficients c with v = sum_i c_i * input_i (requires tracking and v in span).
  [[nodiscard]] std::optional<std::map<std::size_t, Rational>> coordinates(SparseVec v) const;
  // Basis of {x in Q^n : <row, x> = 0 for every inserted row}.
  [[nodiscard]] std::vector<SparseVec> kernel(std::size_t n) const;

 private:
  struct Row {
    SparseVec v;
    std::map<std::size_t, Rational> combo;
  };
  void reduce(SparseVec& v, std::map<std::size_t, Rational>* combo) const;

  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Row> rows_;  // keyed by leading column; leading entry is 1
};

// a += s * b on sparse vectors.
void axpy(SparseVec& a, const Rational& s, const SparseVec& b);

// Univariate polynomial with rational coefficients, low degree first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly monomial(std::size_t degree, Rational c = 1);

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return c_; }
  [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  [[nodiscard]] Rational eval(const Rational& x) const;
  [[nodiscard]] UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// Returns (g, s, t) with s*a + t*b = g = monic gcd(a, b).
struct ExtGcd {
  UPoly g, s, t;
};
ExtGcd ext_gcd(const UPoly& a, const UPoly& b);
// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const UPoly& p);

}  // namespace stm
