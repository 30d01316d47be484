#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace stm {

// Integer Laurent polynomial in one variable. Zero coefficients are never
// stored.
class LaurentPoly {
 public:
  using Coeff = long long;

  LaurentPoly() = default;
  LaurentPoly(Coeff constant);  // NOLINT(google-explicit-constructor)
  static LaurentPoly monomial(int exponent, Coeff c = 1);

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Coeff coeff(int exponent) const;
  [[nodiscard]] const std::map<int, Coeff>& terms() const { return terms_; }
  [[nodiscard]] int min_exponent() const;  // requires !is_zero()
  [[nodiscard]] int max_exponent() const;  // requires !is_zero()
  [[nodiscard]] bool nonnegative() const;
  [[nodiscard]] Coeff eval_at_one() const;

  // p(x) -> p(x^-1)
  [[nodiscard]] LaurentPoly bar() const;
  // p(x) -> p(x^k)
  [[nodiscard]] LaurentPoly substitute_power(int k) const;
  // p(x) -> x^k p(x)
  [[nodiscard]] LaurentPoly shifted(int k) const;

  void add_term(int exponent, Coeff c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

  // Exact division; throws std::domain_error when the divisor does not divide.
  [[nodiscard]] LaurentPoly divide_exact(const LaurentPoly& divisor) const;

  // Human form, e.g. "1+2q^2+q^3" or "v^-1+v".
  [[nodiscard]] std::string pretty(const std::string& var = "q") const;
  // Sorted "exp:coeff" pairs, e.g. "0:1,1:1". The zero polynomial is "".
  [[nodiscard]] std::string serialize() const;
  static LaurentPoly parse(const std::string& text);

 private:
  std::map<int, Coeff> terms_;
};

}  // namespace stm
