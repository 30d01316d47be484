#pragma once

#include <map>
#include <string>
#include <vector>

#include "stm/hecke.hpp"
#include "stm/laurent.hpp"
#include "stm/rootdata.hpp"
#include "stm/smod.hpp"

namespace stm {

// A subexpression of a word: at each letter either fold (stay) or cross (multiply by s_i).
struct Gallery {
  Word word;
  std::vector<bool> choices;  // true = cross
  std::vector<WeylElt> trajectory;
  WeylElt endpoint;
  // Dimension of the affine cell inside the fiber over the endpoint's Bruhat cell:
  // the number of steps at which gamma_{i-1} s_i < gamma_{i-1}.
  int cell_dim = 0;
};

// All galleries of `word` ending at w, in lexicographic order of the choices (fold before cross).
std::vector<Gallery> galleries(const WeylGroup& W, const Word& word, WeylElt w);

// F_{word,w}(q) = sum over galleries of q^cell_dim.
LaurentPoly fiber_poincare(const WeylGroup& W, const Word& word, WeylElt w);
// F_{word,w} for every w with a nonzero polynomial.
std::map<WeylElt, LaurentPoly> fiber_polynomials(const WeylGroup& W, const Word& word);

// sum_w q^{l(w)} F_{word,w}(q) == (1+q)^len
bool global_sum_holds(const WeylGroup& W, const Word& word);

struct WhitneyTateReport {
  Word word;
  std::vector<std::pair<WeylElt, LaurentPoly>> cells;
  bool paved = true;
  bool total_check = false;
  [[nodiscard]] std::string to_json(const WeylGroup& W) const;
};
WhitneyTateReport whitney_tate_witness(const WeylGroup& W, const Word& word);

// P_{w,x}(q^2); zero unless w <= x.
LaurentPoly local_character(const KLPolynomials& kl, WeylElt x, WeylElt w);

// sum_x m_x(q) local_character(x, w) == F_{word,w}(q^2) for every w, where
// m_x(q) = sum over summands D_x<k> of BS(word) of q^k.
bool decomposition_consistent(const Catalog& cat, const KLPolynomials& kl, const Word& word);

}  // namespace stm
