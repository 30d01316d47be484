#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stm/coinv.hpp"
#include "stm/hecke.hpp"
#include "stm/laurent.hpp"
#include "stm/linalg.hpp"
#include "stm/rootdata.hpp"

namespace stm {

struct NonSplitSemisimpleQuotient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite dimensional graded module over Q[x_1..x_n]; x_i raises degree by 2.
// Maps between modules are plain matrices (rows: target, columns: source).
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(std::vector<int> degrees, std::vector<Matrix> actions, std::string label = {});

  [[nodiscard]] std::size_t dim() const { return degrees_.size(); }
  [[nodiscard]] int nvars() const { return static_cast<int>(actions_.size()); }
  [[nodiscard]] const std::vector<int>& degrees() const { return degrees_; }
  [[nodiscard]] int degree(std::size_t i) const { return degrees_[i]; }
  [[nodiscard]] const Matrix& action(int i) const { return actions_[i]; }
  [[nodiscard]] const std::vector<Matrix>& actions() const { return actions_; }
  [[nodiscard]] LaurentPoly grdim() const;
  [[nodiscard]] int min_degree() const;
  [[nodiscard]] int max_degree() const;
  // M<k>: every degree raised by k.
  [[nodiscard]] GradedModule shifted(int k) const;
  // Polynomial acting through the module structure.
  [[nodiscard]] Matrix evaluate(const Poly& f) const;
  // Actions commute, raise degree by 2, and the given invariants act by zero.
  [[nodiscard]] bool is_valid(const std::vector<Poly>& invariants) const;

  std::string label;

  // JSON: degrees plus per-variable action matrices with rational strings.
  [[nodiscard]] std::string serialize() const;
  static GradedModule parse(const std::string& json);

  friend bool operator==(const GradedModule& a, const GradedModule& b) {
    return a.degrees_ == b.degrees_ && a.actions_ == b.actions_;
  }

 private:
  std::vector<int> degrees_;
  std::vector<Matrix> actions_;
};

GradedModule point_module(int nvars);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

// theta_s M = C (x)_{C^s} M with basis [1 (x) M ; P_s (x) M].
GradedModule theta(const WeylGroup& W, int s, const GradedModule& M);
Matrix theta_map(const Matrix& f);
// theta_s M -> M
Matrix counit(const WeylGroup& W, int s, const GradedModule& M);
// M<2> -> theta_s M
Matrix unit(const WeylGroup& W, int s, const GradedModule& M);

GradedModule bott_samelson(const WeylGroup& W, const Word& word);

// True when f: M -> N is homogeneous of degree d and intertwines the actions.
bool is_module_map(const GradedModule& M, const GradedModule& N, const Matrix& f, int d = 0);
// Basis of maps M -> N raising degree by d.
std::vector<Matrix> hom_basis(const GradedModule& M, const GradedModule& N, int d);
LaurentPoly graded_hom(const GradedModule& M, const GradedModule& N);

// Degree zero endomorphisms with structure constants: basis[a] * basis[b] = sum_l mult[a][b][l] basis[l].
struct EndRing {
  std::vector<Matrix> basis;
  std::vector<std::vector<std::vector<Rational>>> mult;
  std::shared_ptr<RowReducer> span;  // tracked, over flattened basis matrices
  [[nodiscard]] std::size_t dim() const { return basis.size(); }
  // Coordinates of an element of the span.
  [[nodiscard]] std::vector<Rational> coordinates(const Matrix& m) const;
};
EndRing end_ring(const GradedModule& M);
// Basis of the Jacobson radical in end-ring coordinates.
std::vector<std::vector<Rational>> jacobson_radical(const EndRing& A);

bool is_nilpotent(const Matrix& a);
UPoly minimal_polynomial(const Matrix& a);

struct Summand {
  GradedModule module;  // lowest degree 0
  int shift = 0;        // module<shift> is the actual summand
  Matrix inclusion;     // module<shift> -> M
  Matrix projection;    // M -> module<shift>
};

// Krull-Schmidt decomposition into indecomposables, ordered by (shift, graded dimension).
std::vector<Summand> decompose(const GradedModule& M);

// For indecomposable M and N with equal graded dimension: an isomorphism M -> N.
std::optional<Matrix> find_isomorphism(const GradedModule& M, const GradedModule& N);

struct LabeledSummand {
  WeylElt x;
  int shift = 0;
  Matrix inclusion;   // D_x<shift> -> M
  Matrix projection;  // M -> D_x<shift>
};

// The indecomposables D_x for all x up to a length bound.
class Catalog {
 public:
  Catalog(const WeylGroup& W, int max_length);

  [[nodiscard]] const WeylGroup& group() const { return W_; }
  [[nodiscard]] int max_length() const { return max_length_; }
  [[nodiscard]] bool contains(WeylElt x) const { return modules_.count(x) != 0; }
  [[nodiscard]] const GradedModule& module(WeylElt x) const { return *modules_.at(x); }
  [[nodiscard]] std::shared_ptr<const GradedModule> shared(WeylElt x) const { return modules_.at(x); }

  // Label of an indecomposable (lowest degree 0) together with an isomorphism to D_x.
  struct Match {
    WeylElt x;
    Matrix iso;      // N -> D_x
    Matrix iso_inv;  // D_x -> N
  };
  [[nodiscard]] std::optional<Match> identify(const GradedModule& N) const;
  // Decomposition with summands identified as D_x<shift>; inclusions and
  // projections are composed with the identifying isomorphisms.
  [[nodiscard]] std::vector<LabeledSummand> decompose_labeled(const GradedModule& M) const;
  // Decomposition of theta_s D_x, computed once.
  [[nodiscard]] const std::vector<LabeledSummand>& theta_decomposition(WeylElt x, int s) const;
  // Multiplicities {(x, shift) -> count} of BS(word), obtained by applying
  // theta one letter at a time to the labeled summands.
  [[nodiscard]] std::map<std::pair<WeylElt, int>, int> bs_multiplicities(const Word& word) const;

 private:
  const WeylGroup& W_;
  int max_length_;
  std::map<WeylElt, std::shared_ptr<const GradedModule>> modules_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<WeylElt, int>, std::vector<LabeledSummand>> theta_cache_;
};

// Expected multiset {(x, shift) -> count} from the Hecke expansion of b_{s1}...b_{sk}.
std::map<std::pair<WeylElt, int>, int> predicted_summands(const HeckeAlgebra& H, const Word& word);

}  // namespace stm
