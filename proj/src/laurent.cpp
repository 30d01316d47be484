#include "stm/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace stm {

LaurentPoly::LaurentPoly(Coeff constant) {
  if (constant != 0) terms_[0] = constant;
}

LaurentPoly LaurentPoly::monomial(int exponent, Coeff c) {
  LaurentPoly p;
  p.add_term(exponent, c);
  return p;
}

LaurentPoly::Coeff LaurentPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("LaurentPoly: zero has no exponents");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("LaurentPoly: zero has no exponents");
  return terms_.rbegin()->first;
}

bool LaurentPoly::nonnegative() const {
  for (const auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

LaurentPoly::Coeff LaurentPoly::eval_at_one() const {
  Coeff s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.terms_[-e] = c;
  return p;
}

LaurentPoly LaurentPoly::substitute_power(int k) const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.add_term(e * k, c);
  return p;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.terms_[e + k] = c;
  return p;
}

void LaurentPoly::add_term(int exponent, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.terms_[e] = -c;
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [e1, c1] : a.terms_)
    for (const auto& [e2, c2] : b.terms_) p.add_term(e1 + e2, c1 * c2);
  return p;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("LaurentPoly: division by zero");
  LaurentPoly rem = *this, quo;
  const int dlead = divisor.max_exponent();
  const Coeff dc = divisor.coeff(dlead);
  while (!rem.is_zero()) {
    const int lead = rem.max_exponent();
    const Coeff c = rem.coeff(lead);
    if (c % dc != 0 || lead - dlead < rem.min_exponent() - divisor.min_exponent())
      throw std::domain_error("LaurentPoly: inexact division");
    LaurentPoly t = monomial(lead - dlead, c / dc);
    quo += t;
    rem -= t * divisor;
  }
  return quo;
}

std::string LaurentPoly::pretty(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Coeff mag = c < 0 ? -c : c;
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag;
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::string LaurentPoly::serialize() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << ",";
    first = false;
    os << e << ":" << c;
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
  LaurentPoly p;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("LaurentPoly: bad term '" + item + "'");
    p.add_term(std::stoi(item.substr(0, colon)), std::stoll(item.substr(colon + 1)));
  }
  return p;
}

}  // namespace stm
