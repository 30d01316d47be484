#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "stm/laurent.hpp"
#include "stm/rootdata.hpp"

namespace stm {

struct NegativeStructureConstant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of the Hecke algebra in the standard basis T_x, coefficients in v.
struct HeckeElt {
  std::map<WeylElt, LaurentPoly> terms;

  [[nodiscard]] LaurentPoly coeff(WeylElt x) const;
  void add(WeylElt x, const LaurentPoly& c);

  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(const LaurentPoly& c, const HeckeElt& h);
  friend bool operator==(const HeckeElt& a, const HeckeElt& b) = default;
};

// Kazhdan-Lusztig polynomials P_{x,w}(q) from the classical recursion.
// Thread safe; results are memoized.
class KLPolynomials {
 public:
  explicit KLPolynomials(const WeylGroup& W) : W_(W) {}

  [[nodiscard]] LaurentPoly operator()(WeylElt x, WeylElt w) const;
  // Coefficient of q^{(l(w)-l(x)-1)/2} in P_{x,w}; zero unless x < w with odd length gap.
  [[nodiscard]] long long mu(WeylElt x, WeylElt w) const;

 private:
  LaurentPoly compute(WeylElt x, WeylElt w) const;

  const WeylGroup& W_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<std::pair<WeylElt, WeylElt>, LaurentPoly> memo_;
};

// Hecke algebra with (T_s - v^-1)(T_s + v) = 0 and b_s = T_s + v.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const WeylGroup& W);

  [[nodiscard]] const WeylGroup& group() const { return W_; }
  [[nodiscard]] const KLPolynomials& kl() const { return kl_; }

  [[nodiscard]] HeckeElt standard(WeylElt x) const;
  [[nodiscard]] HeckeElt mul_T(const HeckeElt& h, int s) const;  // h * T_s
  [[nodiscard]] HeckeElt mul_b(const HeckeElt& h, int s) const;  // h * b_s
  [[nodiscard]] HeckeElt multiply(const HeckeElt& a, const HeckeElt& b) const;

  // KL basis element built by Hecke products (independent of KLPolynomials).
  [[nodiscard]] const HeckeElt& kl_basis_element(WeylElt w) const;
  // sum_x v^{l(w)-l(x)} P_{x,w}(v^-2) T_x from the recursion.
  [[nodiscard]] HeckeElt kl_basis_from_polynomials(WeylElt w) const;

  // b_{s1} ... b_{sk}
  [[nodiscard]] HeckeElt bs_character(const Word& word) const;
  // Coefficients in the KL basis, any sign.
  [[nodiscard]] std::map<WeylElt, LaurentPoly> kl_coordinates(const HeckeElt& h) const;
  // Same, but throws NegativeStructureConstant on a negative coefficient.
  [[nodiscard]] std::map<WeylElt, LaurentPoly> kl_expand(const HeckeElt& h) const;

  // Predicted graded dimension (in q) of Hom(BS(word1), BS(word2)).
  [[nodiscard]] LaurentPoly hom_pairing(const Word& word1, const Word& word2) const;

 private:
  const WeylGroup& W_;
  KLPolynomials kl_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<WeylElt, HeckeElt> basis_;
};

}  // namespace stm
