#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stm/laurent.hpp"
#include "stm/rational.hpp"

namespace stm {

enum class CartanType { A, B, C, D, G };

struct UnsupportedType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

CartanType parse_cartan_type(const std::string& text);
char to_char(CartanType t);

using IntMatrix = std::vector<std::vector<int>>;

struct RootSystem {
  CartanType type = CartanType::A;
  int rank = 0;
  // Simple roots in the usual Euclidean coordinates.
  std::vector<std::vector<Rational>> simple_roots;
  // cartan[i][j] = <alpha_i^vee, alpha_j>
  IntMatrix cartan;
  // Positive roots in simple-root coordinates.
  std::vector<std::vector<int>> positive_roots;
  std::vector<int> fundamental_degrees;

  [[nodiscard]] std::string name() const;
  [[nodiscard]] long long weyl_order() const;
};

// Supported: A1-A4, B2, B3, C3, D4, G2.
RootSystem build_root_system(CartanType type, int rank);

// Handle to an element of a WeylGroup; index into the group's element list,
// which is ordered by (length, canonical word).
struct WeylElt {
  std::uint32_t index = 0;
  friend auto operator<=>(const WeylElt&, const WeylElt&) = default;
};

using Word = std::vector<int>;  // 0-based simple reflection indices

class WeylGroup {
 public:
  explicit WeylGroup(RootSystem rs);

  [[nodiscard]] const RootSystem& root_system() const { return rs_; }
  [[nodiscard]] int rank() const { return rs_.rank; }
  [[nodiscard]] std::size_t size() const { return elems_.size(); }

  [[nodiscard]] WeylElt identity() const { return {0}; }
  [[nodiscard]] WeylElt longest() const { return {static_cast<std::uint32_t>(elems_.size() - 1)}; }
  [[nodiscard]] WeylElt simple(int s) const { return right_[0][s]; }
  // All elements ordered by (length, canonical word).
  [[nodiscard]] std::vector<WeylElt> elements() const;

  // Canonical (lexicographically least) reduced word.
  [[nodiscard]] const Word& word(WeylElt w) const { return elems_[w.index].word; }
  [[nodiscard]] int length(WeylElt w) const { return elems_[w.index].length; }
  // Action on the reflection representation in simple-root coordinates;
  // column j holds the image of alpha_j.
  [[nodiscard]] const IntMatrix& matrix(WeylElt w) const { return elems_[w.index].matrix; }
  [[nodiscard]] int inversion_count(WeylElt w) const;

  [[nodiscard]] WeylElt mul_right(WeylElt w, int s) const { return right_[w.index][s]; }
  [[nodiscard]] WeylElt mul_left(int s, WeylElt w) const { return left_[w.index][s]; }
  [[nodiscard]] WeylElt multiply(WeylElt a, WeylElt b) const;
  [[nodiscard]] WeylElt inverse(WeylElt w) const { return inverse_[w.index]; }
  [[nodiscard]] bool right_descent(WeylElt w, int s) const { return length(mul_right(w, s)) < length(w); }
  [[nodiscard]] bool left_descent(int s, WeylElt w) const { return length(mul_left(s, w)) < length(w); }

  [[nodiscard]] WeylElt from_word(std::span<const int> word) const;
  // Canonical word of the element when `word` is reduced, nullopt otherwise.
  [[nodiscard]] std::optional<Word> normalize(std::span<const int> word) const;

  // Subword property against the canonical word of y.
  [[nodiscard]] bool bruhat_leq(WeylElt x, WeylElt y) const { return below_[y.index][x.index]; }
  [[nodiscard]] WeylElt demazure_product(std::span<const int> word) const;

  // Minimal length representatives of W / W_P.
  [[nodiscard]] std::vector<WeylElt> parabolic_quotient(const std::vector<int>& parabolic) const;
  [[nodiscard]] LaurentPoly poincare_polynomial(const std::vector<int>& parabolic = {}) const;

  // "2,1,3,2" with 1-based indices, "e" for the identity.
  [[nodiscard]] std::string format(WeylElt w) const;
  [[nodiscard]] WeylElt parse(const std::string& text) const;

 private:
  struct Element {
    Word word;
    int length = 0;
    IntMatrix matrix;
  };

  RootSystem rs_;
  std::vector<Element> elems_;
  std::vector<std::vector<WeylElt>> right_;
  std::vector<std::vector<WeylElt>> left_;
  std::vector<WeylElt> inverse_;
  std::vector<std::vector<bool>> below_;  // below_[y][x] == (x <= y)
};

// Word helpers for the 1-based comma separated external format.
std::string format_word(const Word& w);
Word parse_word(const std::string& text, int rank);

}  // namespace stm
