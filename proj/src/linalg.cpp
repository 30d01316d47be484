#include "stm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

namespace stm {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.is_zero(); });
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != Rational(r == c ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

Rational Matrix::trace() const {
  Rational t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  if (s.is_one()) return *this;
  for (auto& x : data_)
    if (!x.is_zero()) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in *");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  return c;
}

Rref rref(Matrix m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    Rational inv = Rational(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!m(row, c).is_zero()) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) {
  RowReducer red;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVec v;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) v.emplace_back(c, m(r, c));
    red.add(std::move(v));
  }
  return red.rank();
}

std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(n));
  Rref r = rref(std::move(aug));
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.reduced.block(0, n, n, n);
}

std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b) {
  Matrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t r = 0; r < a.rows(); ++r) aug(r, a.cols()) = b[r];
  Rref r = rref(std::move(aug));
  std::vector<Rational> x(a.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == a.cols()) return std::nullopt;
    x[r.pivots[i]] = r.reduced(i, a.cols());
  }
  return x;
}

Matrix matrix_power(const Matrix& m, unsigned exponent) {
  Matrix result = Matrix::identity(m.rows());
  Matrix base = m;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

SparseVec to_sparse(const std::vector<Rational>& dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) v.emplace_back(i, dense[i]);
  return v;
}

SparseVec to_sparse(const Matrix& m) { return to_sparse(m.data()); }

void axpy(SparseVec& a, const Rational& s, const SparseVec& b) {
  if (s.is_zero() || b.empty()) return;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational x = a[i].second + s * b[j].second;
      if (!x.is_zero()) out.emplace_back(a[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

namespace {
void combo_axpy(std::map<std::size_t, Rational>& a, const Rational& s, const std::map<std::size_t, Rational>& b) {
  for (const auto& [k, x] : b) {
    Rational& slot = a[k];
    slot += s * x;
    if (slot.is_zero()) a.erase(k);
  }
}
}  // namespace

void RowReducer::reduce(SparseVec& v, std::map<std::size_t, Rational>* combo) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    Rational f = -v[pos].second;
    std::size_t lead = v[pos].first;
    axpy(v, f, it->second.v);
    if (combo) combo_axpy(*combo, f, it->second.combo);
    // entries before lead are unchanged; find first index >= lead
    pos = static_cast<std::size_t>(
        std::lower_bound(v.begin(), v.end(), lead, [](const auto& e, std::size_t k) { return e.first < k; }) -
        v.begin());
  }
}

bool RowReducer::add(SparseVec v) {
  std::map<std::size_t, Rational> combo;
  if (track_) combo[inserted_] = 1;
  ++inserted_;
  reduce(v, track_ ? &combo : nullptr);
  if (v.empty()) return false;
  // v is fully reduced against pivots; its first entry is a new pivot
  Rational inv = Rational(1) / v.front().second;
  for (auto& e : v) e.second *= inv;
  for (auto& e : combo) e.second *= inv;
  std::size_t lead = v.front().first;
  rows_.emplace(lead, Row{std::move(v), std::move(combo)});
  return true;
}

bool RowReducer::contains(SparseVec v) const {
  reduce(v, nullptr);
  return v.empty();
}

std::optional<std::map<std::size_t, Rational>> RowReducer::coordinates(SparseVec v) const {
  if (!track_) throw std::logic_error("RowReducer: coordinates require tracking");
  std::map<std::size_t, Rational> combo;
  reduce(v, &combo);
  if (!v.empty()) return std::nullopt;
  for (auto& e : combo) e.second = -e.second;
  return combo;
}

std::vector<SparseVec> RowReducer::kernel(std::size_t n) const {
  // back-substitute into reduced row echelon form
  std::vector<std::pair<std::size_t, SparseVec>> rows;
  rows.reserve(rows_.size());
  for (const auto& [lead, row] : rows_) rows.emplace_back(lead, row.v);
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      auto& rj = rows[j].second;
      auto it = std::lower_bound(rj.begin(), rj.end(), rows[i].first,
                                 [](const auto& e, std::size_t k) { return e.first < k; });
      if (it != rj.end() && it->first == rows[i].first) {
        Rational f = -it->second;
        axpy(rj, f, rows[i].second);
      }
    }
  }
  std::vector<bool> is_pivot(n, false);
  for (const auto& r : rows) is_pivot[r.first] = true;
  // column f -> list of (pivot, coefficient)
  std::vector<SparseVec> col_entries(n);
  for (const auto& [lead, v] : rows)
    for (const auto& [c, x] : v)
      if (c != lead) col_entries[c].emplace_back(lead, x);
  std::vector<SparseVec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    SparseVec k;
    k.emplace_back(f, Rational(1));
    for (const auto& [p, x] : col_entries[f]) k.emplace_back(p, -x);
    std::sort(k.begin(), k.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(k));
  }
  return basis;
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(std::size_t degree, Rational c) {
  std::vector<Rational> v(degree + 1);
  v[degree] = std::move(c);
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  UPoly m = *this;
  Rational inv = Rational(1) / c_.back();
  for (auto& x : m.c_) x *= inv;
  return m;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("UPoly: division by zero");
  std::vector<Rational> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  std::vector<Rational> quo(rem.size() >= bc.size() ? rem.size() - bc.size() + 1 : 0);
  for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
    if (rem[i].is_zero()) continue;
    Rational f = rem[i] / bc.back();
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * bc[j];
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

ExtGcd ext_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0({Rational(1)}), s1, t0, t1({Rational(1)});
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = Rational(1) / r0.coeffs().back();
  UPoly k({inv});
  return {r0 * k, s0 * k, t0 * k};
}

std::vector<Rational> rational_roots(const UPoly& p) {
  if (p.degree() <= 0) return {};
  // squarefree part keeps the numerical search well conditioned
  std::vector<Rational> deriv;
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) deriv.push_back(p.coeffs()[i] * Rational(static_cast<long long>(i)));
  UPoly g = ext_gcd(p, UPoly(deriv)).g;
  UPoly sf = divmod(p, g).first.monic();
  const int n = sf.degree();
  std::set<Rational> roots;
  auto try_candidate = [&](const Rational& r) {
    if (sf.eval(r).is_zero()) roots.insert(r);
  };
  if (n == 1) {
    try_candidate(-sf.coeff(0));
  } else {
    // Durand-Kerner for approximate roots, then exact verification of nearby
    // rationals with small denominators.
    using C = std::complex<long double>;
    std::vector<long double> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = static_cast<long double>(sf.coeff(i).to_mpq().get_d());
    auto eval = [&](C z) {
      C acc = 0;
      for (int i = n; i >= 0; --i) acc = acc * z + a[i];
      return acc;
    };
    std::vector<C> z(n);
    C seed(0.4L, 0.9L);
    for (int i = 0; i < n; ++i) z[i] = std::pow(seed, i);
    long double bound = 1;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(a[i]));
    for (int i = 0; i < n; ++i) z[i] *= bound / 2;
    for (int it = 0; it < 2000; ++it) {
      long double change = 0;
      for (int i = 0; i < n; ++i) {
        C denom = 1;
        for (int j = 0; j < n; ++j)
          if (j != i) denom *= (z[i] - z[j]);
        if (std::abs(denom) == 0) denom = 1e-18L;
        C delta = eval(z[i]) / denom;
        z[i] -= delta;
        change = std::max(change, std::abs(delta));
      }
      if (change < 1e-15L) break;
    }
    for (const auto& r : z) {
      if (std::fabs(r.imag()) > 1e-3L * (1 + std::fabs(r.real()))) continue;
      // continued fraction convergents of the real part
      long double x = r.real();
      long long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
      for (int step = 0; step < 40; ++step) {
        long double fl = std::floor(x);
        if (std::fabs(fl) > 9e15L) break;
        auto ai = static_cast<long long>(fl);
        long long h2 = ai * h0 + h1, k2 = ai * k0 + k1;
        if (k2 > 2000000000LL || std::llabs(h2) > 4000000000000000000LL) break;
        try_candidate(Rational(h2, k2));
        h1 = h0, h0 = h2, k1 = k0, k0 = k2;
        long double frac = x - fl;
        if (frac < 1e-30L) break;
        x = 1 / frac;
      }
    }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace stm
