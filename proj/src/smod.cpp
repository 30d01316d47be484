#include "stm/smod.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "json.hpp"

namespace stm {

// ---------------------------------------------------------------- modules

GradedModule::GradedModule(std::vector<int> degrees, std::vector<Matrix> actions, std::string label_)
    : label(std::move(label_)), degrees_(std::move(degrees)), actions_(std::move(actions)) {
  for (const auto& a : actions_)
    if (a.rows() != degrees_.size() || a.cols() != degrees_.size())
      throw std::invalid_argument("GradedModule: action size mismatch");
}

LaurentPoly GradedModule::grdim() const {
  LaurentPoly p;
  for (int d : degrees_) p.add_term(d, 1);
  return p;
}

int GradedModule::min_degree() const {
  if (degrees_.empty()) throw std::logic_error("GradedModule: zero module has no degrees");
  return *std::min_element(degrees_.begin(), degrees_.end());
}

int GradedModule::max_degree() const {
  if (degrees_.empty()) throw std::logic_error("GradedModule: zero module has no degrees");
  return *std::max_element(degrees_.begin(), degrees_.end());
}

GradedModule GradedModule::shifted(int k) const {
  GradedModule m = *this;
  for (int& d : m.degrees_) d += k;
  return m;
}

Matrix GradedModule::evaluate(const Poly& f) const {
  Matrix out(dim(), dim());
  for (const auto& [mon, c] : f.terms()) {
    Matrix t = Matrix::identity(dim());
    for (int i = 0; i < nvars(); ++i)
      for (int k = 0; k < mon[i]; ++k) t = actions_[i] * t;
    out += t * c;
  }
  return out;
}

bool GradedModule::is_valid(const std::vector<Poly>& invariants) const {
  for (int i = 0; i < nvars(); ++i) {
    const Matrix& a = actions_[i];
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c)
        if (!a(r, c).is_zero() && degrees_[r] != degrees_[c] + 2) return false;
    for (int j = i + 1; j < nvars(); ++j)
      if (a * actions_[j] != actions_[j] * a) return false;
  }
  for (const auto& f : invariants)
    if (!evaluate(f).is_zero()) return false;
  return true;
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational::parse(j.at(r).at(c).get<std::string>());
  return m;
}

}  // namespace

std::string GradedModule::serialize() const {
  nlohmann::json j;
  j["label"] = label;
  j["degrees"] = degrees_;
  std::map<int, int> table;
  for (int d : degrees_) ++table[d];
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& [d, n] : table) dims.push_back({d, n});
  j["dims"] = dims;
  nlohmann::json acts = nlohmann::json::array();
  for (const auto& a : actions_) acts.push_back(matrix_json(a));
  j["actions"] = acts;
  return j.dump();
}

GradedModule GradedModule::parse(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<int> degrees = j.at("degrees").get<std::vector<int>>();
  std::vector<Matrix> actions;
  for (const auto& a : j.at("actions")) actions.push_back(matrix_from_json(a, degrees.size()));
  return GradedModule(std::move(degrees), std::move(actions), j.value("label", std::string{}));
}

GradedModule point_module(int nvars) {
  return GradedModule({0}, std::vector<Matrix>(nvars, Matrix(1, 1)), "Q");
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  std::vector<int> degs = a.degrees();
  degs.insert(degs.end(), b.degrees().begin(), b.degrees().end());
  std::vector<Matrix> acts;
  const int n = std::max(a.nvars(), b.nvars());
  for (int i = 0; i < n; ++i) {
    Matrix m(degs.size(), degs.size());
    if (i < a.nvars()) m.set_block(0, 0, a.action(i));
    if (i < b.nvars()) m.set_block(a.dim(), a.dim(), b.action(i));
    acts.push_back(std::move(m));
  }
  return GradedModule(std::move(degs), std::move(acts));
}

GradedModule theta(const WeylGroup& W, int s, const GradedModule& M) {
  const int n = M.nvars();
  const std::size_t d = M.dim();
  const Poly P = half_root(n, s);
  std::vector<Matrix> acts;
  for (int i = 0; i < n; ++i) {
    // c = a + b P with a, b in C^s, for c = x_i and c = x_i P.
    const Poly xi = Poly::variable(n, i);
    const Poly b1 = demazure(W, s, xi);
    const Poly a1 = xi - b1 * P;
    const Poly xp = xi * P;
    const Poly b2 = demazure(W, s, xp);
    const Poly a2 = xp - b2 * P;
    Matrix m(2 * d, 2 * d);
    m.set_block(0, 0, M.evaluate(a1));
    m.set_block(d, 0, M.evaluate(b1));
    m.set_block(0, d, M.evaluate(a2));
    m.set_block(d, d, M.evaluate(b2));
    acts.push_back(std::move(m));
  }
  std::vector<int> degs = M.degrees();
  for (int x : M.degrees()) degs.push_back(x + 2);
  return GradedModule(std::move(degs), std::move(acts));
}

Matrix theta_map(const Matrix& f) {
  Matrix m(2 * f.rows(), 2 * f.cols());
  m.set_block(0, 0, f);
  m.set_block(f.rows(), f.cols(), f);
  return m;
}

Matrix counit(const WeylGroup&, int s, const GradedModule& M) {
  Matrix m(M.dim(), 2 * M.dim());
  m.set_block(0, 0, Matrix::identity(M.dim()));
  m.set_block(0, M.dim(), M.evaluate(half_root(M.nvars(), s)));
  return m;
}

Matrix unit(const WeylGroup&, int s, const GradedModule& M) {
  Matrix m(2 * M.dim(), M.dim());
  m.set_block(0, 0, M.evaluate(half_root(M.nvars(), s)));
  m.set_block(M.dim(), 0, Matrix::identity(M.dim()));
  return m;
}

GradedModule bott_samelson(const WeylGroup& W, const Word& word) {
  GradedModule M = point_module(W.rank());
  for (int s : word) M = theta(W, s, M);
  M.label = "BS(" + (word.empty() ? std::string() : format_word(word)) + ")";
  return M;
}

// ---------------------------------------------------------------- homs

bool is_module_map(const GradedModule& M, const GradedModule& N, const Matrix& f, int d) {
  if (f.rows() != N.dim() || f.cols() != M.dim()) return false;
  for (std::size_t r = 0; r < N.dim(); ++r)
    for (std::size_t c = 0; c < M.dim(); ++c)
      if (!f(r, c).is_zero() && N.degree(r) != M.degree(c) + d) return false;
  for (int i = 0; i < M.nvars(); ++i)
    if (N.action(i) * f != f * M.action(i)) return false;
  return true;
}

std::vector<Matrix> hom_basis(const GradedModule& M, const GradedModule& N, int d) {
  const std::size_t m = M.dim(), n = N.dim();
  std::vector<std::vector<long>> idx(n, std::vector<long>(m, -1));
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c)
      if (N.degree(r) == M.degree(c) + d) {
        idx[r][c] = static_cast<long>(unknowns.size());
        unknowns.emplace_back(r, c);
      }
  if (unknowns.empty()) return {};

  // Sparse copies of the actions.
  auto sparse_rows = [](const Matrix& a) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c)
        if (!a(r, c).is_zero()) rows[r].emplace_back(c, a(r, c));
    return rows;
  };
  auto sparse_cols = [](const Matrix& a) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c)
        if (!a(r, c).is_zero()) cols[c].emplace_back(r, a(r, c));
    return cols;
  };

  RowReducer rr;
  std::map<std::size_t, Rational> acc;
  for (int i = 0; i < M.nvars(); ++i) {
    auto nrows = sparse_rows(N.action(i));
    auto mcols = sparse_cols(M.action(i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        if (N.degree(r) != M.degree(c) + d + 2) continue;
        acc.clear();
        // (N_i F)(r, c) - (F M_i)(r, c)
        for (const auto& [k, x] : nrows[r])
          if (idx[k][c] >= 0) acc[static_cast<std::size_t>(idx[k][c])] += x;
        for (const auto& [k, x] : mcols[c])
          if (idx[r][k] >= 0) acc[static_cast<std::size_t>(idx[r][k])] -= x;
        SparseVec v;
        for (const auto& [u, x] : acc)
          if (!x.is_zero()) v.emplace_back(u, x);
        if (!v.empty()) rr.add(std::move(v));
      }
  }
  std::vector<Matrix> out;
  for (const auto& k : rr.kernel(unknowns.size())) {
    Matrix f(n, m);
    for (const auto& [u, x] : k) f(unknowns[u].first, unknowns[u].second) = x;
    out.push_back(std::move(f));
  }
  return out;
}

LaurentPoly graded_hom(const GradedModule& M, const GradedModule& N) {
  LaurentPoly p;
  if (M.dim() == 0 || N.dim() == 0) return p;
  for (int d = N.min_degree() - M.max_degree(); d <= N.max_degree() - M.min_degree(); ++d)
    p.add_term(d, static_cast<LaurentPoly::Coeff>(hom_basis(M, N, d).size()));
  return p;
}

// ---------------------------------------------------------------- end ring

std::vector<Rational> EndRing::coordinates(const Matrix& m) const {
  auto c = span->coordinates(to_sparse(m));
  if (!c) throw std::logic_error("EndRing: element outside the span");
  std::vector<Rational> out(dim(), Rational(0));
  for (const auto& [i, x] : *c) out[i] = x;
  return out;
}

EndRing end_ring(const GradedModule& M) {
  EndRing A;
  A.basis = hom_basis(M, M, 0);
  A.span = std::make_shared<RowReducer>(true);
  for (const auto& b : A.basis) A.span->add(to_sparse(b));
  const std::size_t r = A.dim();
  A.mult.assign(r, std::vector<std::vector<Rational>>(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) A.mult[a][b] = A.coordinates(A.basis[a] * A.basis[b]);
  return A;
}

std::vector<std::vector<Rational>> jacobson_radical(const EndRing& A) {
  const std::size_t r = A.dim();
  // left multiplication matrices: L_a(l, m) = coefficient of E_l in E_a E_m
  Matrix form(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      Rational t;
      for (std::size_t l = 0; l < r; ++l)
        for (std::size_t m = 0; m < r; ++m) {
          const Rational& x = A.mult[a][m][l];
          if (x.is_zero()) continue;
          const Rational& y = A.mult[b][l][m];
          if (!y.is_zero()) t += x * y;
        }
      form(a, b) = t;
      form(b, a) = t;
    }
  return nullspace(form);
}

bool is_nilpotent(const Matrix& a) {
  Matrix p = a;
  for (std::size_t k = 1; k < a.rows(); k *= 2) {
    if (p.is_zero()) return true;
    p = p * p;
  }
  return p.is_zero();
}

UPoly minimal_polynomial(const Matrix& a) {
  RowReducer rr(true);
  Matrix p = Matrix::identity(a.rows());
  for (std::size_t k = 0;; ++k) {
    SparseVec v = to_sparse(p);
    if (rr.contains(v)) {
      auto c = *rr.coordinates(v);
      std::vector<Rational> coeffs(k + 1, Rational(0));
      coeffs[k] = 1;
      for (const auto& [i, x] : c) coeffs[i] = -x;
      return UPoly(coeffs);
    }
    rr.add(std::move(v));
    p = p * a;
  }
}

namespace {

Matrix eval_poly(const UPoly& f, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (int i = f.degree(); i >= 0; --i) {
    out = out * a;
    const Rational& c = f.coeff(static_cast<std::size_t>(i));
    if (!c.is_zero())
      for (std::size_t k = 0; k < a.rows(); ++k) out(k, k) += c;
  }
  return out;
}

// Projection onto the generalized kernel of a, as a polynomial in a; empty
// when a is nilpotent or invertible.
std::optional<Matrix> fitting_idempotent(const Matrix& a) {
  UPoly f = minimal_polynomial(a);
  std::size_t r = 0;
  while (f.coeff(r).is_zero()) ++r;
  if (r == 0 || static_cast<int>(r) == f.degree()) return std::nullopt;
  std::vector<Rational> gc(f.coeffs().begin() + static_cast<long>(r), f.coeffs().end());
  UPoly g(gc);
  UPoly tr = UPoly::monomial(r);
  auto eg = ext_gcd(tr, g);  // s t^r + t g = 1
  return eval_poly(eg.t * g, a);
}

Matrix combine(const std::vector<Matrix>& basis, const std::vector<Rational>& coeffs) {
  Matrix out(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeffs[i].is_zero()) out += basis[i] * coeffs[i];
  return out;
}

std::vector<Rational> random_combination(std::mt19937& rng, const std::vector<std::vector<Rational>>& vecs,
                                         std::size_t n) {
  std::uniform_int_distribution<int> dist(-3, 3);
  std::vector<Rational> out(n, Rational(0));
  for (const auto& v : vecs) {
    Rational c = dist(rng);
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += c * v[i];
  }
  return out;
}

std::optional<Matrix> find_idempotent(const GradedModule& M) {
  EndRing A = end_ring(M);
  const std::size_t r = A.dim();
  if (r <= 1) return std::nullopt;
  auto rad = jacobson_radical(A);
  const std::size_t semisimple = r - rad.size();
  if (semisimple == 1) return std::nullopt;
  std::mt19937 rng(0x5eed);

  // Preimage of the centre of A / rad: z with [z, E_j] in rad for all j.
  Matrix radrows(rad.size(), r);
  for (std::size_t i = 0; i < rad.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) radrows(i, j) = rad[i][j];
  std::vector<std::vector<Rational>> annihilator =
      rad.empty() ? nullspace(Matrix(0, r)) : nullspace(radrows);
  Matrix cond(r * annihilator.size(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t q = 0; q < annihilator.size(); ++q)
      for (std::size_t a = 0; a < r; ++a) {
        Rational t;
        for (std::size_t l = 0; l < r; ++l) t += annihilator[q][l] * (A.mult[a][j][l] - A.mult[j][a][l]);
        cond(j * annihilator.size() + q, a) = t;
      }
  auto centre = nullspace(cond);
  const std::size_t centre_dim = centre.size() - rad.size();

  if (centre_dim >= 2) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      Matrix z = combine(A.basis, random_combination(rng, centre, r));
      UPoly f = minimal_polynomial(z);
      auto roots = rational_roots(f);
      // distinct roots must account for the whole squarefree part
      UPoly sf(std::vector<Rational>{Rational(1)});
      for (const auto& x : roots) sf = sf * UPoly({-x, Rational(1)});
      if (!divmod(f, sf).second.is_zero()) throw std::logic_error("minimal polynomial root bookkeeping failed");
      UPoly rest = f;
      for (const auto& x : roots)
        while (rest.eval(x).is_zero()) rest = divmod(rest, UPoly({-x, Rational(1)})).first;
      if (rest.degree() > 0)
        throw NonSplitSemisimpleQuotient("central element with irrational eigenvalues");
      if (roots.size() < 2) continue;
      Matrix shifted = z - Matrix::identity(z.rows()) * roots.front();
      if (auto e = fitting_idempotent(shifted)) return e;
    }
    throw NonSplitSemisimpleQuotient("could not separate central blocks");
  }

  // Simple semisimple quotient: split with an element killing a low-degree vector.
  std::vector<std::size_t> order(M.dim());
  for (std::size_t i = 0; i < M.dim(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return M.degree(a) < M.degree(b); });
  for (std::size_t v : order) {
    Matrix images(M.dim(), r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t i = 0; i < M.dim(); ++i) images(i, a) = A.basis[a](i, v);
    auto ann = nullspace(images);
    if (ann.empty()) continue;
    for (int attempt = 0; attempt < 6; ++attempt) {
      Matrix y = combine(A.basis, random_combination(rng, ann, r));
      if (is_nilpotent(y)) continue;
      if (auto e = fitting_idempotent(y)) return e;
    }
  }
  throw NonSplitSemisimpleQuotient("no splitting element in a non-local endomorphism ring");
}

struct Piece {
  GradedModule module;
  Matrix inclusion;   // piece -> M
  Matrix projection;  // M -> piece
};

Piece image_of(const GradedModule& M, const Matrix& e) {
  Rref cr = rref(e);
  const std::size_t k = cr.pivots.size();
  Matrix B(M.dim(), k);
  std::vector<int> degs;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < M.dim(); ++i) B(i, j) = e(i, cr.pivots[j]);
    degs.push_back(M.degree(cr.pivots[j]));
  }
  Rref rr = rref(B.transpose());
  Matrix BR(k, k), ER(k, M.dim());
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) BR(a, b) = B(rr.pivots[a], b);
    for (std::size_t c = 0; c < M.dim(); ++c) ER(a, c) = e(rr.pivots[a], c);
  }
  Matrix C = *inverse(BR) * ER;
  std::vector<Matrix> acts;
  for (const auto& x : M.actions()) acts.push_back(C * x * B);
  return {GradedModule(std::move(degs), std::move(acts)), B, C};
}

void split(const GradedModule& M, const Matrix& incl, const Matrix& proj, std::vector<Piece>& out) {
  auto e = find_idempotent(M);
  if (!e) {
    out.push_back({M, incl, proj});
    return;
  }
  Matrix f = Matrix::identity(M.dim()) - *e;
  for (const Matrix* idem : {&*e, &f}) {
    Piece p = image_of(M, *idem);
    split(p.module, incl * p.inclusion, p.projection * proj, out);
  }
}

}  // namespace

std::vector<Summand> decompose(const GradedModule& M) {
  std::vector<Summand> out;
  if (M.dim() == 0) return out;
  std::vector<Piece> pieces;
  split(M, Matrix::identity(M.dim()), Matrix::identity(M.dim()), pieces);
  for (auto& p : pieces) {
    const int k = p.module.min_degree();
    GradedModule norm = p.module.shifted(-k);
    out.push_back({std::move(norm), k, std::move(p.inclusion), std::move(p.projection)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Summand& a, const Summand& b) {
    if (a.shift != b.shift) return a.shift < b.shift;
    return a.module.grdim().serialize() < b.module.grdim().serialize();
  });
  return out;
}

std::optional<Matrix> find_isomorphism(const GradedModule& M, const GradedModule& N) {
  if (M.degrees().size() != N.degrees().size() || M.grdim() != N.grdim()) return std::nullopt;
  for (const auto& f : hom_basis(M, N, 0))
    if (inverse(f)) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------- catalog

Catalog::Catalog(const WeylGroup& W, int max_length) : W_(W), max_length_(max_length) {
  for (WeylElt x : W.elements()) {
    if (W.length(x) > max_length) break;
    if (x == W.identity()) {
      modules_[x] = std::make_shared<const GradedModule>(point_module(W.rank()));
      continue;
    }
    const int s = W.word(x).back();
    const WeylElt xs = W.mul_right(x, s);
    GradedModule M = theta(W, s, module(xs));
    std::optional<GradedModule> fresh;
    for (auto& piece : decompose(M)) {
      if (identify(piece.module)) continue;
      if (fresh || piece.shift != 0) throw std::logic_error("catalog: unexpected new summand for " + W.format(x));
      fresh = std::move(piece.module);
    }
    if (!fresh) throw std::logic_error("catalog: no new summand for " + W.format(x));
    fresh->label = "D_" + W.format(x);
    modules_[x] = std::make_shared<const GradedModule>(std::move(*fresh));
  }
}

std::optional<Catalog::Match> Catalog::identify(const GradedModule& N) const {
  for (const auto& [x, D] : modules_) {
    if (D->grdim() != N.grdim()) continue;
    if (auto f = find_isomorphism(N, *D)) return Match{x, *f, *inverse(*f)};
  }
  return std::nullopt;
}

std::vector<LabeledSummand> Catalog::decompose_labeled(const GradedModule& M) const {
  std::vector<LabeledSummand> out;
  for (auto& piece : decompose(M)) {
    auto m = identify(piece.module);
    if (!m) throw std::runtime_error("summand outside the catalog (length bound " + std::to_string(max_length_) + ")");
    out.push_back({m->x, piece.shift, piece.inclusion * m->iso_inv, m->iso * piece.projection});
  }
  std::stable_sort(out.begin(), out.end(), [](const LabeledSummand& a, const LabeledSummand& b) {
    return a.x != b.x ? a.x < b.x : a.shift < b.shift;
  });
  return out;
}

const std::vector<LabeledSummand>& Catalog::theta_decomposition(WeylElt x, int s) const {
  {
    std::lock_guard lock(mutex_);
    auto it = theta_cache_.find({x, s});
    if (it != theta_cache_.end()) return it->second;
  }
  auto parts = decompose_labeled(theta(W_, s, module(x)));
  std::lock_guard lock(mutex_);
  return theta_cache_.emplace(std::pair{x, s}, std::move(parts)).first->second;
}

std::map<std::pair<WeylElt, int>, int> Catalog::bs_multiplicities(const Word& word) const {
  std::map<std::pair<WeylElt, int>, int> cur{{{W_.identity(), 0}, 1}};
  for (int s : word) {
    std::map<std::pair<WeylElt, int>, int> next;
    for (const auto& [key, count] : cur)
      for (const auto& part : theta_decomposition(key.first, s)) next[{part.x, key.second + part.shift}] += count;
    cur = std::move(next);
  }
  return cur;
}

std::map<std::pair<WeylElt, int>, int> predicted_summands(const HeckeAlgebra& H, const Word& word) {
  const WeylGroup& W = H.group();
  std::map<std::pair<WeylElt, int>, int> out;
  const int len = static_cast<int>(word.size());
  for (const auto& [x, m] : H.kl_expand(H.bs_character(word)))
    for (const auto& [j, c] : m.terms()) out[{x, len - W.length(x) - j}] += static_cast<int>(c);
  return out;
}

}  // namespace stm
