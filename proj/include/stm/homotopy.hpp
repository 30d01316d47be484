#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stm/hecke.hpp"
#include "stm/linalg.hpp"
#include "stm/pointcat.hpp"
#include "stm/smod.hpp"

namespace stm {

struct GateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One direct summand module<shift> of a term; catalog pieces carry their label.
struct TermPiece {
  std::shared_ptr<const GradedModule> module;
  int shift = 0;
  std::optional<WeylElt> label;
  [[nodiscard]] std::size_t dim() const { return module->dim(); }
};
using Term = std::vector<TermPiece>;

// Bounded cochain complex: d^i maps X^i to X^{i+1}; matrices act on the
// concatenation of the pieces of a term.
class ComplexObj {
 public:
  std::map<int, Term> terms;
  std::map<int, Matrix> diff;
  int twist_offset = 0;  // total Tate twist applied through tate()

  [[nodiscard]] const Term& term(int i) const;
  [[nodiscard]] std::size_t dim(int i) const;
  // d^i, a zero matrix when absent.
  [[nodiscard]] Matrix d(int i) const;
  [[nodiscard]] GradedModule module(int i) const;
  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  // Lowest and highest degree with a nonzero term.
  [[nodiscard]] std::optional<std::pair<int, int>> support() const;
  [[nodiscard]] bool all_labeled() const;
  // d^2 = 0 and every d^i is a degree 0 module map.
  [[nodiscard]] bool is_valid() const;
  // Drops empty terms and zero differentials.
  void prune();

  // JSON: per-degree pieces (label or module label, shift) and differential matrices.
  [[nodiscard]] std::string serialize(const WeylGroup& W) const;
};

// f^i : X^i -> Y^i
struct ChainMap {
  std::map<int, Matrix> comps;
  [[nodiscard]] Matrix at(const ComplexObj& X, const ComplexObj& Y, int i) const;
};

ComplexObj module_complex(std::shared_ptr<const GradedModule> M, int degree = 0,
                          std::optional<WeylElt> label = std::nullopt);
// D_x in degree 0.
ComplexObj heart_object(const Catalog& cat, WeylElt x);

// X[n]^i = X^{i+n}, differential times (-1)^n.
ComplexObj shift(const ComplexObj& X, int n);
// Every piece moved up by k in internal degree.
ComplexObj internal_shift(const ComplexObj& X, int k);
// X(n) = X<-2n>[-2n]
ComplexObj tate(const ComplexObj& X, int n);
ComplexObj direct_sum(const ComplexObj& X, const ComplexObj& Y);

ChainMap identity_map(const ComplexObj& X);
ChainMap zero_map(const ComplexObj& X, const ComplexObj& Y);
bool is_chain_map(const ComplexObj& X, const ComplexObj& Y, const ChainMap& f);
// Cone(f)^i = X^{i+1} + Y^i with d = [[-d_X, 0], [f, d_Y]].
ComplexObj cone(const ComplexObj& X, const ComplexObj& Y, const ChainMap& f);

// (k, j) -> dim Hom_K(X, Y[k]<j>), over the whole finite support.
std::map<std::pair<int, int>, long long> hom_table(const ComplexObj& X, const ComplexObj& Y);
// (n, m) -> dim Hom_K(X, tate(shift(Y, n), m)).
BigradedVS hom_complex(const ComplexObj& X, const ComplexObj& Y);

// Splits unlabeled pieces into catalog indecomposables.
ComplexObj label_terms(const ComplexObj& X, const Catalog& cat);
// Gaussian elimination of isomorphism components, lowest degree and first piece first.
ComplexObj minimalize(const ComplexObj& X, const Catalog& cat);

// theta_s applied termwise, with terms split into catalog indecomposables.
ComplexObj theta_complex(const ComplexObj& X, const Catalog& cat, int s);
// theta_s X -> X
ChainMap counit_map(const ComplexObj& X, const ComplexObj& thetaX, const Catalog& cat, int s);
// X<2> -> theta_s X
ChainMap unit_map(const ComplexObj& X, const ComplexObj& thetaX, const Catalog& cat, int s);

// Homological shift and internal twist applied after each cone.
struct Placement {
  int delta_shift = -1;
  int delta_twist = 0;
  int nabla_shift = 0;
  int nabla_twist = 0;
  friend bool operator==(const Placement&, const Placement&) = default;
};
Placement frozen_placement();
// Placements from the finite candidate set satisfying orthogonality on the
// catalog's group; throws GateFailure when none does.
std::vector<Placement> orthogonality_gate(const Catalog& cat);

// F_s(X) = Cone(theta_s X -> X) and E_s(X) = Cone(X<2> -> theta_s X), placed and minimalized.
ComplexObj apply_standard_step(const ComplexObj& X, const Catalog& cat, int s, const Placement& p = frozen_placement());
ComplexObj apply_costandard_step(const ComplexObj& X, const Catalog& cat, int s,
                                 const Placement& p = frozen_placement());
// Steps applied letter by letter starting from D_e.
ComplexObj rouquier_complex(const Catalog& cat, const Word& word, bool standard,
                            const Placement& p = frozen_placement());
ComplexObj standard_object(const Catalog& cat, WeylElt w, const Placement& p = frozen_placement());
ComplexObj costandard_object(const Catalog& cat, WeylElt w, const Placement& p = frozen_placement());

// hom_complex(Delta_x, tate(shift(nabla_y, n), a)) over the given ranges.
BigradedVS orthogonality_check(const Catalog& cat, WeylElt x, WeylElt y, int n_range, int a_range);
// Full support holds only the delta at (0, 0) for x == y.
bool orthogonal(const ComplexObj& delta_x, const ComplexObj& nabla_y, bool same);

struct WeightTriangle {
  ComplexObj upper;  // degrees > n, a subcomplex
  ComplexObj lower;  // degrees <= n, a quotient
  ChainMap inclusion;
  ChainMap projection;
};
// The weight of a term in degree i is i.
WeightTriangle weight_triangle(const ComplexObj& X, int n);
ComplexObj weight_truncate(const ComplexObj& X, Bound b, int n);
// Weight range of the minimal representative.
std::optional<std::pair<int, int>> weight_range(const ComplexObj& X, const Catalog& cat);

struct CensusKey {
  WeylElt x;
  int degree = 0;
  int shift = 0;
  friend auto operator<=>(const CensusKey&, const CensusKey&) = default;
};
// Counts of D_x<shift> in each degree of a labeled complex.
std::map<CensusKey, int> delta_flag_multiplicities(const ComplexObj& X);
// From the KL expansion of v^{-l(w)} T_w (standard) or v^{-l(w)} T_{s1}^{-1}...T_{sk}^{-1}
// (costandard): the coefficient c v^e of b_x predicts |c| copies of D_x<-e-l(x)> in degree e+l(w).
std::map<CensusKey, int> predicted_census(const HeckeAlgebra& H, WeylElt w, bool standard);
// Euler characteristic in the KL basis, D_x<k> in degree i counting (-1)^i v^{-k-l(x)}.
std::map<WeylElt, LaurentPoly> euler_characteristic(const ComplexObj& X, const WeylGroup& W);

struct ExtAlgebra {
  std::vector<WeylElt> objects;
  std::map<std::pair<WeylElt, WeylElt>, BigradedVS> table;  // E^{n,m}_{x,y}
  bool pure = false;                   // nonzero only at n = 2m
  bool generated_in_degree_one = false;
  // CSV with columns x,y,n,m,dim.
  [[nodiscard]] std::string csv(const WeylGroup& W) const;
};
ExtAlgebra ext_algebra(const Catalog& cat, int max_length);

struct KoszulReport {
  bool matched = false;
  std::map<std::pair<WeylElt, WeylElt>, BigradedVS> table;  // dim Hom(Delta_x, Delta_y[n](m))
  [[nodiscard]] std::string csv(const WeylGroup& W) const;
};
// Checks dim Hom(Delta_x, Delta_y[n](m)) against the koszul_point image with labels
// fixed. The index map is taken in coordinates where Delta_x carries the half twist
// (l(x)/2): with e = l(y) - l(x), (n, m) corresponds to (n - 2m + e, e - m).
KoszulReport koszul_numerics(const Catalog& cat);
// The K-image of one table entry block for objects of lengths lx and ly.
BigradedVS koszul_transform(const BigradedVS& t, int lx, int ly);

// i + d for a basis vector of internal degree d in homological degree i.
std::map<int, long long> degrade_complex(const ComplexObj& X);

}  // namespace stm
