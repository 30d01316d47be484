#include "stm/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace stm {
namespace {

using i128 = __int128;

constexpr i128 kMax = std::numeric_limits<long long>::max();
constexpr i128 kMin = -kMax;  // keep negation safe

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpq_class from128(i128 n, i128 d) {
  auto to_mpz = [](i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  mpq_class q(to_mpz(n), to_mpz(d));
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  if (nn > kMax || nn < kMin || dd > kMax) {
    assign(from128(nn, dd));
  } else {
    num_ = static_cast<long long>(nn);
    den_ = static_cast<long long>(dd);
  }
}

Rational::Rational(const mpq_class& q) { assign(q); }

void Rational::assign(const mpq_class& q) {
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
      q.get_num() != std::numeric_limits<long>::min()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(q);
  }
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  q.canonicalize();
  return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(static_cast<long>(num_), static_cast<long>(den_));
  return q;
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) return *this = o;
    i128 n, d;
    if (den_ == o.den_) {
      n = static_cast<i128>(num_) + o.num_;
      d = den_;
    } else {
      n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
      d = static_cast<i128>(den_) * o.den_;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    i128 g = gcd128(n, d);
    n /= g;
    d /= g;
    if (n <= kMax && n >= kMin && d <= kMax) {
      num_ = static_cast<long long>(n);
      den_ = static_cast<long long>(d);
    } else {
      assign(from128(n, d));
    }
    return *this;
  }
  assign(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    i128 a = num_, b = den_, c = o.num_, d = o.den_;
    i128 g1 = gcd128(a, d), g2 = gcd128(c, b);
    a /= g1;
    d /= g1;
    c /= g2;
    b /= g2;
    i128 n = a * c, dd = b * d;  // |factors| < 2^63, product fits in 127 bits
    if (n <= kMax && n >= kMin && dd <= kMax) {
      num_ = static_cast<long long>(n);
      den_ = static_cast<long long>(dd);
    } else {
      assign(from128(n, dd));
    }
    return *this;
  }
  assign(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!o.big_) {
    Rational inv;
    if (o.num_ < 0) {
      inv.num_ = -o.den_;
      inv.den_ = -o.num_;
    } else {
      inv.num_ = o.den_;
      inv.den_ = o.num_;
    }
    return *this *= inv;
  }
  assign(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical representation: big values never fit in 64 bits
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace stm
