#include "stm/fibers.hpp"

#include "json.hpp"

namespace stm {

namespace {

template <class F>
void enumerate(const WeylGroup& W, const Word& word, F&& visit) {
  const std::size_t k = word.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Gallery g;
    g.word = word;
    g.trajectory.push_back(W.identity());
    WeylElt cur = W.identity();
    for (std::size_t i = 0; i < k; ++i) {
      // first letter is the most significant bit, so folds come first
      const bool cross = (mask >> (k - 1 - i)) & 1U;
      const WeylElt next = W.mul_right(cur, word[i]);
      if (W.length(next) < W.length(cur)) ++g.cell_dim;
      if (cross) cur = next;
      g.choices.push_back(cross);
      g.trajectory.push_back(cur);
    }
    g.endpoint = cur;
    visit(g);
  }
}

}  // namespace

std::vector<Gallery> galleries(const WeylGroup& W, const Word& word, WeylElt w) {
  std::vector<Gallery> out;
  enumerate(W, word, [&](const Gallery& g) {
    if (g.endpoint == w) out.push_back(g);
  });
  return out;
}

LaurentPoly fiber_poincare(const WeylGroup& W, const Word& word, WeylElt w) {
  LaurentPoly p;
  for (const auto& g : galleries(W, word, w)) p.add_term(g.cell_dim, 1);
  return p;
}

std::map<WeylElt, LaurentPoly> fiber_polynomials(const WeylGroup& W, const Word& word) {
  std::map<WeylElt, LaurentPoly> out;
  enumerate(W, word, [&](const Gallery& g) { out[g.endpoint].add_term(g.cell_dim, 1); });
  return out;
}

bool global_sum_holds(const WeylGroup& W, const Word& word) {
  LaurentPoly total;
  for (const auto& [w, f] : fiber_polynomials(W, word)) total += f.shifted(W.length(w));
  LaurentPoly expect(1);
  for (std::size_t i = 0; i < word.size(); ++i) expect *= LaurentPoly(1) + LaurentPoly::monomial(1);
  return total == expect;
}

WhitneyTateReport whitney_tate_witness(const WeylGroup& W, const Word& word) {
  WhitneyTateReport r;
  r.word = word;
  for (auto& [w, f] : fiber_polynomials(W, word)) {
    r.paved = r.paved && f.nonnegative();
    r.cells.emplace_back(w, f);
  }
  r.total_check = global_sum_holds(W, word);
  return r;
}

std::string WhitneyTateReport::to_json(const WeylGroup& W) const {
  nlohmann::ordered_json j;
  j["word"] = format_word(word);
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& [w, f] : cells) cs.push_back({{"w", W.format(w)}, {"poly", f.pretty()}});
  j["cells"] = cs;
  j["paved"] = paved;
  j["total_check"] = total_check;
  return j.dump();
}

LaurentPoly local_character(const KLPolynomials& kl, WeylElt x, WeylElt w) {
  return kl(w, x).substitute_power(2);
}

bool decomposition_consistent(const Catalog& cat, const KLPolynomials& kl, const Word& word) {
  const WeylGroup& W = cat.group();
  std::map<WeylElt, LaurentPoly> m;
  for (const auto& [key, count] : cat.bs_multiplicities(word)) m[key.first].add_term(key.second, count);
  const auto fibers = fiber_polynomials(W, word);
  for (WeylElt w : W.elements()) {
    LaurentPoly lhs;
    for (const auto& [x, mx] : m) lhs += mx * local_character(kl, x, w);
    auto it = fibers.find(w);
    const LaurentPoly rhs = it == fibers.end() ? LaurentPoly() : it->second.substitute_power(2);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace stm
