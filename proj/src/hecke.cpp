#include "stm/hecke.hpp"

namespace stm {

LaurentPoly HeckeElt::coeff(WeylElt x) const {
  auto it = terms.find(x);
  return it == terms.end() ? LaurentPoly() : it->second;
}

void HeckeElt::add(WeylElt x, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  for (const auto& [x, c] : o.terms) add(x, c);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  for (const auto& [x, c] : o.terms) add(x, -c);
  return *this;
}

HeckeElt operator*(const LaurentPoly& c, const HeckeElt& h) {
  HeckeElt r;
  if (c.is_zero()) return r;
  for (const auto& [x, a] : h.terms) r.add(x, c * a);
  return r;
}

LaurentPoly KLPolynomials::operator()(WeylElt x, WeylElt w) const {
  if (!W_.bruhat_leq(x, w)) return {};
  if (x == w) return LaurentPoly(1);
  std::lock_guard lock(mutex_);
  auto it = memo_.find({x, w});
  if (it != memo_.end()) return it->second;
  LaurentPoly p = compute(x, w);
  memo_.emplace(std::pair{x, w}, p);
  return p;
}

long long KLPolynomials::mu(WeylElt x, WeylElt w) const {
  const int gap = W_.length(w) - W_.length(x);
  if (gap <= 0 || gap % 2 == 0) return 0;
  return (*this)(x, w).coeff((gap - 1) / 2);
}

LaurentPoly KLPolynomials::compute(WeylElt x, WeylElt w) const {
  const int s = W_.word(w).back();
  const WeylElt v = W_.mul_right(w, s);
  const WeylElt xs = W_.mul_right(x, s);
  const int c = W_.right_descent(x, s) ? 1 : 0;

  LaurentPoly p = LaurentPoly::monomial(1 - c) * (*this)(xs, v) + LaurentPoly::monomial(c) * (*this)(x, v);
  for (std::uint32_t zi = x.index; zi < v.index; ++zi) {
    const WeylElt z{zi};
    if (!W_.right_descent(z, s) || !W_.bruhat_leq(x, z) || !W_.bruhat_leq(z, v)) continue;
    const long long m = mu(z, v);
    if (m == 0) continue;
    p -= LaurentPoly::monomial((W_.length(w) - W_.length(z)) / 2, m) * (*this)(x, z);
  }
  return p;
}

HeckeAlgebra::HeckeAlgebra(const WeylGroup& W) : W_(W), kl_(W) {}

HeckeElt HeckeAlgebra::standard(WeylElt x) const {
  HeckeElt h;
  h.add(x, LaurentPoly(1));
  return h;
}

HeckeElt HeckeAlgebra::mul_T(const HeckeElt& h, int s) const {
  static const LaurentPoly gap = LaurentPoly::monomial(-1) - LaurentPoly::monomial(1);
  HeckeElt r;
  for (const auto& [x, c] : h.terms) {
    const WeylElt xs = W_.mul_right(x, s);
    r.add(xs, c);
    if (W_.length(xs) < W_.length(x)) r.add(x, gap * c);
  }
  return r;
}

HeckeElt HeckeAlgebra::mul_b(const HeckeElt& h, int s) const {
  return mul_T(h, s) + LaurentPoly::monomial(1) * h;
}

HeckeElt HeckeAlgebra::multiply(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt r;
  for (const auto& [y, c] : b.terms) {
    HeckeElt part = a;
    for (int s : W_.word(y)) part = mul_T(part, s);
    r += c * part;
  }
  return r;
}

const HeckeElt& HeckeAlgebra::kl_basis_element(WeylElt w) const {
  std::lock_guard lock(mutex_);
  auto it = basis_.find(w);
  if (it != basis_.end()) return it->second;

  HeckeElt h;
  if (w == W_.identity()) {
    h = standard(w);
  } else {
    const int s = W_.word(w).back();
    h = mul_b(kl_basis_element(W_.mul_right(w, s)), s);
    for (std::uint32_t zi = w.index; zi-- > 0;) {
      const WeylElt z{zi};
      const LaurentPoly::Coeff c0 = h.coeff(z).coeff(0);
      if (c0 != 0) h -= LaurentPoly(c0) * kl_basis_element(z);
    }
  }
  return basis_.emplace(w, std::move(h)).first->second;
}

HeckeElt HeckeAlgebra::kl_basis_from_polynomials(WeylElt w) const {
  HeckeElt h;
  for (WeylElt x : W_.elements())
    h.add(x, kl_(x, w).substitute_power(-2).shifted(W_.length(w) - W_.length(x)));
  return h;
}

HeckeElt HeckeAlgebra::bs_character(const Word& word) const {
  HeckeElt h = standard(W_.identity());
  for (int s : word) h = mul_b(h, s);
  return h;
}

std::map<WeylElt, LaurentPoly> HeckeAlgebra::kl_coordinates(const HeckeElt& h) const {
  std::map<WeylElt, LaurentPoly> out;
  HeckeElt rest = h;
  while (!rest.terms.empty()) {
    auto top = std::prev(rest.terms.end());
    const WeylElt x = top->first;
    const LaurentPoly c = top->second;
    out[x] = c;
    rest -= c * kl_basis_element(x);
  }
  return out;
}

std::map<WeylElt, LaurentPoly> HeckeAlgebra::kl_expand(const HeckeElt& h) const {
  auto out = kl_coordinates(h);
  for (const auto& [x, c] : out)
    if (!c.nonnegative())
      throw NegativeStructureConstant("negative coefficient " + c.pretty("v") + " on b_" + W_.format(x));
  return out;
}

LaurentPoly HeckeAlgebra::hom_pairing(const Word& word1, const Word& word2) const {
  const HeckeElt a = bs_character(word1);
  const HeckeElt b = bs_character(word2);
  LaurentPoly v;
  for (const auto& [x, p] : a.terms) {
    auto it = b.terms.find(x);
    if (it != b.terms.end()) v += p * it->second;
  }
  return v.shifted(static_cast<int>(word2.size()) - static_cast<int>(word1.size()));
}

}  // namespace stm
