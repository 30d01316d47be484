#include "stm/coinv.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace stm {

// ---------------------------------------------------------------- Poly

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Monomial m(nvars, 0);
  m[i] = 1;
  return monomial(m);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p(static_cast<int>(m.size()));
  p.add_term(m, c);
  return p;
}

namespace {
int total(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}
}  // namespace

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total(m));
  return d;
}

Poly Poly::homogeneous_part(int degree) const {
  Poly p(nvars_);
  for (const auto& [m, c] : terms_)
    if (total(m) == degree) p.terms_.emplace(m, c);
  return p;
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  Rational s;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

Poly Poly::partial(int i) const {
  Poly p(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    --d[i];
    p.add_term(d, c * Rational(m[i]));
  }
  return p;
}

Poly Poly::act(const IntMatrix& mat) const {
  std::vector<Poly> images;
  for (int j = 0; j < nvars_; ++j) {
    Poly l(nvars_);
    for (int k = 0; k < nvars_; ++k)
      if (mat[k][j] != 0) l += Rational(mat[k][j]) * variable(nvars_, k);
    images.push_back(std::move(l));
  }
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(nvars_, c);
    for (int j = 0; j < nvars_; ++j)
      for (int k = 0; k < m[j]; ++k) t = t * images[j];
    out += t;
  }
  return out;
}

Poly Poly::divide_by_variable(int i) const {
  Poly p(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) throw std::domain_error("Poly: term not divisible by x" + std::to_string(i + 1));
    Monomial d = m;
    --d[i];
    p.terms_.emplace(d, c);
  }
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  if (nvars_ == 0) nvars_ = static_cast<int>(m.size());
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly p(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      p.add_term(m, ca * cb);
    }
  return p;
}

Poly operator*(const Rational& c, const Poly& a) {
  Poly p(a.nvars_);
  if (c.is_zero()) return p;
  for (const auto& [m, x] : a.terms_) p.terms_.emplace(m, c * x);
  return p;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = c.to_string();
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    if (c.sign() < 0) cs = (-c).to_string();
    bool constant_term = total(m) == 0;
    if (cs != "1" || constant_term) os << cs << (constant_term ? "" : "*");
    bool firstvar = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << "x" << i + 1;
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  Monomial cur(nvars, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  if (nvars == 0) return out;
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

Poly reflect(const WeylGroup& W, int s, const Poly& f) { return f.act(W.matrix(W.simple(s))); }

Poly demazure(const WeylGroup& W, int s, const Poly& f) {
  return (f - reflect(W, s, f)).divide_by_variable(s);
}

Poly half_root(int nvars, int s) { return Rational(1, 2) * Poly::variable(nvars, s); }

// ---------------------------------------------------------------- invariants

namespace {

SparseVec coords(const Poly& f, const std::map<Monomial, std::size_t>& column) {
  SparseVec v;
  for (const auto& [m, c] : f.terms()) v.emplace_back(column.at(m), c);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

// All products of the given homogeneous polynomials with total degree d.
void products_of_degree(const std::vector<Poly>& gens, std::size_t start, int d, const Poly& acc,
                        std::vector<Poly>& out) {
  if (d == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = start; i < gens.size(); ++i) {
    int g = gens[i].degree();
    if (g <= d) products_of_degree(gens, i, d - g, acc * gens[i], out);
  }
}

}  // namespace

std::vector<Poly> fundamental_invariants(const WeylGroup& W) {
  const int n = W.rank();
  std::vector<int> degrees = W.root_system().fundamental_degrees;
  std::sort(degrees.begin(), degrees.end());
  std::vector<Poly> chosen;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const int d = degrees[k];
    auto mons = monomials_of_degree(n, d);
    std::map<Monomial, std::size_t> column;
    for (std::size_t i = 0; i < mons.size(); ++i) column[mons[i]] = i;
    RowReducer span;
    std::vector<Poly> prods;
    products_of_degree(chosen, 0, d, Poly::constant(n, 1), prods);
    for (const auto& p : prods) span.add(coords(p, column));

    bool found = false;
    for (const auto& m : mons) {
      Poly avg(n);
      for (WeylElt w : W.elements()) avg += Poly::monomial(m).act(W.matrix(w));
      if (avg.is_zero()) continue;
      avg = (Rational(1) / avg.terms().rbegin()->second) * avg;
      if (!span.add(coords(avg, column))) continue;
      chosen.push_back(std::move(avg));
      found = true;
      break;
    }
    if (!found) throw DegenerateAveraging("no new invariant in degree " + std::to_string(2 * d));
  }

  // Jacobian criterion at random rational points.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Rational> pt(n);
    for (auto& x : pt) x = dist(rng);
    Matrix jac(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) jac(i, j) = chosen[i].partial(j).eval(pt);
    if (rank(jac) == static_cast<std::size_t>(n)) return chosen;
  }
  throw DegenerateAveraging("invariants failed the Jacobian test");
}

// ---------------------------------------------------------------- C

CoinvariantAlgebra::CoinvariantAlgebra(const WeylGroup& W)
    : W_(W), n_(W.rank()), top_(static_cast<int>(W.root_system().positive_roots.size())) {
  invariants_ = fundamental_invariants(W);
  pieces_.resize(top_ + 1);
  for (int d = 0; d <= top_; ++d) {
    Piece& pc = pieces_[d];
    pc.monomials = monomials_of_degree(n_, d);
    std::reverse(pc.monomials.begin(), pc.monomials.end());
    for (std::size_t i = 0; i < pc.monomials.size(); ++i) pc.column[pc.monomials[i]] = i;
    for (const Poly& f : invariants_) {
      const int g = f.degree();
      if (g > d) continue;
      for (const auto& m : monomials_of_degree(n_, d - g)) pc.ideal.add(coords(f * Poly::monomial(m), pc.column));
    }
    pc.offset = basis_.size();
    for (std::size_t col = pc.monomials.size(); col-- > 0;) {
      if (pc.ideal.is_pivot(col)) continue;
      pc.basis_columns.push_back(col);
      basis_.push_back(pc.monomials[col]);
      basis_degree_.push_back(2 * d);
    }
  }
}

int CoinvariantAlgebra::degree(std::size_t i) const { return basis_degree_.at(i); }

LaurentPoly CoinvariantAlgebra::hilbert() const {
  LaurentPoly h;
  for (int d : basis_degree_) h.add_term(d, 1);
  return h;
}

std::vector<Rational> CoinvariantAlgebra::normal_form(const Poly& f) const {
  std::vector<Rational> out(dim(), Rational(0));
  std::map<int, Poly> parts;
  for (const auto& [m, c] : f.terms()) {
    int d = total(m);
    if (d > top_) continue;
    auto [it, ins] = parts.try_emplace(d, Poly(n_));
    it->second.add_term(m, c);
  }
  for (const auto& [d, p] : parts) {
    const Piece& pc = pieces_[d];
    SparseVec v = pc.ideal.reduced(coords(p, pc.column));
    for (const auto& [col, c] : v) {
      auto it = std::find(pc.basis_columns.begin(), pc.basis_columns.end(), col);
      out[pc.offset + static_cast<std::size_t>(it - pc.basis_columns.begin())] = c;
    }
  }
  return out;
}

Poly CoinvariantAlgebra::lift(const std::vector<Rational>& c) const {
  Poly p(n_);
  for (std::size_t i = 0; i < c.size(); ++i) p.add_term(basis_[i], c[i]);
  return p;
}

Matrix CoinvariantAlgebra::multiplication_matrix(const Poly& f) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    auto col = normal_form(f * Poly::monomial(basis_[j]));
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

Matrix CoinvariantAlgebra::demazure_matrix(int s) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    auto col = normal_form(demazure(W_, s, Poly::monomial(basis_[j])));
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

Matrix CoinvariantAlgebra::reflection_matrix(int s) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    auto col = normal_form(reflect(W_, s, Poly::monomial(basis_[j])));
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

Subalgebra CoinvariantAlgebra::kernel_of(const std::vector<int>& simple) const {
  std::vector<Matrix> ops;
  for (int s : simple) ops.push_back(demazure_matrix(s));
  std::vector<std::vector<Rational>> vecs;
  std::vector<int> degs;
  for (int d = 0; d <= top_; ++d) {
    const Piece& pc = pieces_[d];
    const std::size_t k = pc.basis_columns.size();
    if (k == 0) continue;
    Matrix stacked(ops.size() * dim(), k);
    for (std::size_t o = 0; o < ops.size(); ++o)
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < k; ++j) stacked(o * dim() + i, j) = ops[o](i, pc.offset + j);
    for (const auto& v : nullspace(stacked)) {
      std::vector<Rational> full(dim(), Rational(0));
      for (std::size_t j = 0; j < k; ++j) full[pc.offset + j] = v[j];
      vecs.push_back(std::move(full));
      degs.push_back(2 * d);
    }
  }
  Subalgebra sub;
  sub.basis = Matrix(dim(), vecs.size());
  for (std::size_t j = 0; j < vecs.size(); ++j)
    for (std::size_t i = 0; i < dim(); ++i) sub.basis(i, j) = vecs[j][i];
  sub.degrees = degs;
  for (int d : degs) sub.hilbert.add_term(d, 1);
  return sub;
}

Subalgebra CoinvariantAlgebra::invariant_subring(int s) const { return kernel_of({s}); }

Subalgebra CoinvariantAlgebra::partial_coinvariants(const std::vector<int>& parabolic) const {
  return kernel_of(parabolic);
}

CoinvariantAlgebra::Split CoinvariantAlgebra::decompose(int s, const std::vector<Rational>& c) const {
  Poly f = lift(c);
  Poly b = demazure(W_, s, f);
  Poly a = f - b * half_root(n_, s);
  return {normal_form(a), normal_form(b)};
}

}  // namespace stm
