#include "stm/homotopy.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace stm {

namespace {

const Term kEmptyTerm;

std::vector<std::size_t> offsets(const Term& t) {
  std::vector<std::size_t> out(t.size() + 1, 0);
  for (std::size_t a = 0; a < t.size(); ++a) out[a + 1] = out[a] + t[a].dim();
  return out;
}

std::size_t total_dim(const Term& t) {
  std::size_t n = 0;
  for (const auto& p : t) n += p.dim();
  return n;
}

Matrix select(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
  return out;
}

std::vector<std::size_t> range_indices(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> v(end - begin);
  std::iota(v.begin(), v.end(), begin);
  return v;
}

std::vector<std::size_t> complement(std::size_t n, std::size_t begin, std::size_t end) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i)
    if (i < begin || i >= end) v.push_back(i);
  return v;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix out(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows) {
  std::size_t c = 0;
  for (const auto& b : blocks) c += b.cols();
  Matrix out(rows, c);
  c = 0;
  for (const auto& b : blocks) {
    out.set_block(0, c, b);
    c += b.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols) {
  std::size_t r = 0;
  for (const auto& b : blocks) r += b.rows();
  Matrix out(r, cols);
  r = 0;
  for (const auto& b : blocks) {
    out.set_block(r, 0, b);
    r += b.rows();
  }
  return out;
}

// Hom bases between piece modules, keyed by identity; the shared pointers keep keys alive.
struct HomCache {
  std::mutex mutex;
  std::map<std::tuple<const GradedModule*, const GradedModule*, int>,
           std::pair<std::pair<std::shared_ptr<const GradedModule>, std::shared_ptr<const GradedModule>>,
                     std::shared_ptr<const std::vector<Matrix>>>>
      entries;
};

HomCache& hom_cache() {
  static HomCache cache;
  return cache;
}

std::shared_ptr<const std::vector<Matrix>> cached_hom(const std::shared_ptr<const GradedModule>& M,
                                                      const std::shared_ptr<const GradedModule>& N, int d) {
  if (M->dim() == 0 || N->dim() == 0 || d < N->min_degree() - M->max_degree() ||
      d > N->max_degree() - M->min_degree())
    return std::make_shared<const std::vector<Matrix>>();
  auto& cache = hom_cache();
  const auto key = std::make_tuple(M.get(), N.get(), d);
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return it->second.second;
  }
  auto basis = std::make_shared<const std::vector<Matrix>>(hom_basis(*M, *N, d));
  std::lock_guard lock(cache.mutex);
  cache.entries.emplace(key, std::make_pair(std::make_pair(M, N), basis));
  return basis;
}

std::pair<int, int> internal_extent(const ComplexObj& X) {
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [i, t] : X.terms)
    for (const auto& p : t) {
      if (p.dim() == 0) continue;
      const int a = p.module->min_degree() + p.shift, b = p.module->max_degree() + p.shift;
      lo = first ? a : std::min(lo, a);
      hi = first ? b : std::max(hi, b);
      first = false;
    }
  return {lo, hi};
}

// One basis element of the Hom complex: a map supported on a single block.
struct HomGen {
  int i;
  std::size_t a, b;  // piece of X^i, piece of Y^{i+k}
  const Matrix* h;
};

std::vector<HomGen> hom_generators(const ComplexObj& X, const ComplexObj& Y, int k, int j,
                                   std::vector<std::shared_ptr<const std::vector<Matrix>>>& keep) {
  std::vector<HomGen> out;
  for (const auto& [i, tx] : X.terms) {
    const Term& ty = Y.term(i + k);
    for (std::size_t a = 0; a < tx.size(); ++a)
      for (std::size_t b = 0; b < ty.size(); ++b) {
        auto basis = cached_hom(tx[a].module, ty[b].module, tx[a].shift - ty[b].shift - j);
        if (basis->empty()) continue;
        keep.push_back(basis);
        for (const auto& h : *basis) out.push_back({i, a, b, &h});
      }
  }
  return out;
}

// Rank of f -> d_Y f - (-1)^k f d_X on the degree-k generators.
std::size_t differential_rank(const ComplexObj& X, const ComplexObj& Y, int k, const std::vector<HomGen>& gens) {
  if (gens.empty()) return 0;
  // Flattened layout of Hom^{k+1}: component i maps X^i -> Y^{i+k+1}.
  std::map<int, std::size_t> base;
  std::size_t total = 0;
  for (const auto& [i, tx] : X.terms) {
    base[i] = total;
    total += total_dim(tx) * Y.dim(i + k + 1);
  }
  const Rational sign = (k % 2 == 0) ? Rational(-1) : Rational(1);
  RowReducer rr;
  std::map<int, std::vector<std::size_t>> xoff, yoff;
  auto xo = [&](int i) -> const std::vector<std::size_t>& {
    auto it = xoff.find(i);
    if (it == xoff.end()) it = xoff.emplace(i, offsets(X.term(i))).first;
    return it->second;
  };
  auto yo = [&](int i) -> const std::vector<std::size_t>& {
    auto it = yoff.find(i);
    if (it == yoff.end()) it = yoff.emplace(i, offsets(Y.term(i))).first;
    return it->second;
  };
  std::map<int, Matrix> dY, dX;
  auto getY = [&](int i) -> const Matrix& {
    auto it = dY.find(i);
    if (it == dY.end()) it = dY.emplace(i, Y.d(i)).first;
    return it->second;
  };
  auto getX = [&](int i) -> const Matrix& {
    auto it = dX.find(i);
    if (it == dX.end()) it = dX.emplace(i, X.d(i)).first;
    return it->second;
  };
  for (const auto& g : gens) {
    std::map<std::size_t, Rational> acc;
    const Matrix& h = *g.h;
    const std::size_t a0 = xo(g.i)[g.a], b0 = yo(g.i + k)[g.b];
    // d_Y^{i+k} f : X^i -> Y^{i+k+1}
    const std::size_t ny = Y.dim(g.i + k + 1);
    if (ny > 0) {
      const Matrix& dy = getY(g.i + k);
      const std::size_t cols = X.dim(g.i);
      for (std::size_t r = 0; r < ny; ++r)
        for (std::size_t t = 0; t < h.rows(); ++t) {
          const Rational& e = dy(r, b0 + t);
          if (e.is_zero()) continue;
          for (std::size_t c = 0; c < h.cols(); ++c)
            if (!h(t, c).is_zero()) acc[base[g.i] + r * cols + a0 + c] += e * h(t, c);
        }
    }
    // sign * f d_X^{i-1} : X^{i-1} -> Y^{i+k}
    const std::size_t nx = X.dim(g.i - 1);
    if (nx > 0) {
      const Matrix& dx = getX(g.i - 1);
      for (std::size_t t = 0; t < h.rows(); ++t)
        for (std::size_t u = 0; u < h.cols(); ++u) {
          if (h(t, u).is_zero()) continue;
          for (std::size_t c = 0; c < nx; ++c) {
            const Rational& e = dx(a0 + u, c);
            if (!e.is_zero()) acc[base[g.i - 1] + (b0 + t) * nx + c] += sign * h(t, u) * e;
          }
        }
    }
    SparseVec v;
    for (const auto& [idx, x] : acc)
      if (!x.is_zero()) v.emplace_back(idx, x);
    if (!v.empty()) rr.add(std::move(v));
  }
  return rr.rank();
}

std::string piece_name(const TermPiece& p, const WeylGroup& W) {
  return p.label ? "D_" + W.format(*p.label) : p.module->label;
}

}  // namespace

// ---------------------------------------------------------------- complexes

const Term& ComplexObj::term(int i) const {
  auto it = terms.find(i);
  return it == terms.end() ? kEmptyTerm : it->second;
}

std::size_t ComplexObj::dim(int i) const { return total_dim(term(i)); }

Matrix ComplexObj::d(int i) const {
  auto it = diff.find(i);
  if (it != diff.end()) return it->second;
  return Matrix(dim(i + 1), dim(i));
}

GradedModule ComplexObj::module(int i) const {
  const Term& t = term(i);
  if (t.empty()) return GradedModule();
  GradedModule out = t[0].module->shifted(t[0].shift);
  for (std::size_t a = 1; a < t.size(); ++a) out = direct_sum(out, t[a].module->shifted(t[a].shift));
  return out;
}

std::optional<std::pair<int, int>> ComplexObj::support() const {
  std::optional<std::pair<int, int>> out;
  for (const auto& [i, t] : terms) {
    if (total_dim(t) == 0) continue;
    if (!out) out = std::pair{i, i};
    out->second = i;
  }
  return out;
}

bool ComplexObj::all_labeled() const {
  for (const auto& [i, t] : terms)
    for (const auto& p : t)
      if (!p.label) return false;
  return true;
}

bool ComplexObj::is_valid() const {
  for (const auto& [i, m] : diff) {
    if (m.rows() != dim(i + 1) || m.cols() != dim(i)) return false;
    if (!is_module_map(module(i), module(i + 1), m, 0)) return false;
    auto next = diff.find(i + 1);
    if (next != diff.end() && !(next->second * m).is_zero()) return false;
  }
  return true;
}

void ComplexObj::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    std::erase_if(it->second, [](const TermPiece& p) { return p.dim() == 0; });
    it = it->second.empty() ? terms.erase(it) : std::next(it);
  }
  for (auto it = diff.begin(); it != diff.end();) it = it->second.is_zero() ? diff.erase(it) : std::next(it);
}

std::string ComplexObj::serialize(const WeylGroup& W) const {
  nlohmann::ordered_json j;
  j["twist_offset"] = twist_offset;
  nlohmann::ordered_json ts = nlohmann::ordered_json::array();
  for (const auto& [i, t] : terms) {
    nlohmann::ordered_json ps = nlohmann::ordered_json::array();
    for (const auto& p : t) ps.push_back({{"module", piece_name(p, W)}, {"shift", p.shift}, {"dim", p.dim()}});
    ts.push_back({{"degree", i}, {"pieces", ps}});
  }
  j["terms"] = ts;
  nlohmann::ordered_json ds = nlohmann::ordered_json::array();
  for (const auto& [i, m] : diff) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
      rows.push_back(row);
    }
    ds.push_back({{"degree", i}, {"matrix", rows}});
  }
  j["differentials"] = ds;
  return j.dump();
}

Matrix ChainMap::at(const ComplexObj& X, const ComplexObj& Y, int i) const {
  auto it = comps.find(i);
  if (it != comps.end()) return it->second;
  return Matrix(Y.dim(i), X.dim(i));
}

ComplexObj module_complex(std::shared_ptr<const GradedModule> M, int degree, std::optional<WeylElt> label) {
  ComplexObj X;
  if (M->dim() > 0) X.terms[degree] = {TermPiece{std::move(M), 0, label}};
  return X;
}

ComplexObj heart_object(const Catalog& cat, WeylElt x) { return module_complex(cat.shared(x), 0, x); }

ComplexObj shift(const ComplexObj& X, int n) {
  ComplexObj Y;
  Y.twist_offset = X.twist_offset;
  for (const auto& [i, t] : X.terms) Y.terms[i - n] = t;
  for (const auto& [i, m] : X.diff) Y.diff[i - n] = (n % 2 == 0) ? m : m * Rational(-1);
  return Y;
}

ComplexObj internal_shift(const ComplexObj& X, int k) {
  ComplexObj Y = X;
  for (auto& [i, t] : Y.terms)
    for (auto& p : t) p.shift += k;
  return Y;
}

ComplexObj tate(const ComplexObj& X, int n) {
  ComplexObj Y = internal_shift(shift(X, -2 * n), -2 * n);
  Y.twist_offset += n;
  return Y;
}

ComplexObj direct_sum(const ComplexObj& X, const ComplexObj& Y) {
  ComplexObj Z;
  Z.twist_offset = X.twist_offset;
  std::set<int> degs;
  for (const auto& [i, t] : X.terms) degs.insert(i);
  for (const auto& [i, t] : Y.terms) degs.insert(i);
  for (int i : degs) {
    Term t = X.term(i);
    const Term& u = Y.term(i);
    t.insert(t.end(), u.begin(), u.end());
    Z.terms[i] = t;
  }
  for (int i : degs) Z.diff[i] = block_diag({X.d(i), Y.d(i)});
  Z.prune();
  return Z;
}

ChainMap identity_map(const ComplexObj& X) {
  ChainMap f;
  for (const auto& [i, t] : X.terms) f.comps[i] = Matrix::identity(total_dim(t));
  return f;
}

ChainMap zero_map(const ComplexObj&, const ComplexObj&) { return {}; }

bool is_chain_map(const ComplexObj& X, const ComplexObj& Y, const ChainMap& f) {
  std::set<int> degs;
  for (const auto& [i, t] : X.terms) degs.insert(i);
  for (const auto& [i, t] : Y.terms) degs.insert(i);
  for (const auto& [i, m] : f.comps) {
    if (m.rows() != Y.dim(i) || m.cols() != X.dim(i)) return false;
    if (!is_module_map(X.module(i), Y.module(i), m, 0)) return false;
  }
  for (int i : degs) {
    for (int e : {i - 1, i})
      if (Y.d(e) * f.at(X, Y, e) != f.at(X, Y, e + 1) * X.d(e)) return false;
  }
  return true;
}

ComplexObj cone(const ComplexObj& X, const ComplexObj& Y, const ChainMap& f) {
  ComplexObj C;
  C.twist_offset = Y.twist_offset;
  std::set<int> degs;
  for (const auto& [i, t] : X.terms) degs.insert(i - 1);
  for (const auto& [i, t] : Y.terms) degs.insert(i);
  for (int i : degs) {
    Term t = X.term(i + 1);
    const Term& u = Y.term(i);
    t.insert(t.end(), u.begin(), u.end());
    if (!t.empty()) C.terms[i] = t;
  }
  for (int i : degs) {
    const std::size_t x1 = X.dim(i + 1), y0 = Y.dim(i), x2 = X.dim(i + 2), y1 = Y.dim(i + 1);
    Matrix m(x2 + y1, x1 + y0);
    m.set_block(0, 0, X.d(i + 1) * Rational(-1));
    m.set_block(x2, 0, f.at(X, Y, i + 1));
    m.set_block(x2, x1, Y.d(i));
    C.diff[i] = m;
  }
  C.prune();
  return C;
}

// ---------------------------------------------------------------- homs

std::map<std::pair<int, int>, long long> hom_table(const ComplexObj& X, const ComplexObj& Y) {
  std::map<std::pair<int, int>, long long> out;
  auto sx = X.support();
  auto sy = Y.support();
  if (!sx || !sy) return out;
  const auto [xl, xh] = internal_extent(X);
  const auto [yl, yh] = internal_extent(Y);
  const int kmin = sy->first - sx->second, kmax = sy->second - sx->first;
  for (int j = xl - yh; j <= xh - yl; ++j) {
    std::map<int, std::size_t> rank, dim;
    std::vector<std::shared_ptr<const std::vector<Matrix>>> keep;
    for (int k = kmin - 1; k <= kmax; ++k) {
      auto gens = hom_generators(X, Y, k, j, keep);
      dim[k] = gens.size();
      rank[k] = differential_rank(X, Y, k, gens);
    }
    for (int k = kmin; k <= kmax; ++k) {
      const long long h = static_cast<long long>(dim[k]) - static_cast<long long>(rank[k]) -
                          static_cast<long long>(rank[k - 1]);
      if (h != 0) out[{k, j}] = h;
    }
  }
  return out;
}

BigradedVS hom_complex(const ComplexObj& X, const ComplexObj& Y) {
  BigradedVS out;
  for (const auto& [key, dim] : hom_table(X, Y)) {
    const auto [k, j] = key;
    if (j % 2 != 0) throw std::domain_error("hom_complex: odd internal twist has no Tate index");
    // Y[n](m) = Y[n-2m]<-2m>
    const int m = -j / 2;
    out.add(k + 2 * m, m, dim);
  }
  return out;
}

// ---------------------------------------------------------------- minimal complexes

ComplexObj label_terms(const ComplexObj& X, const Catalog& cat) {
  if (X.all_labeled()) return X;
  ComplexObj Y;
  Y.twist_offset = X.twist_offset;
  std::map<int, Matrix> proj, incl;
  for (const auto& [i, t] : X.terms) {
    Term nt;
    std::vector<Matrix> ps, is;
    for (const auto& p : t) {
      if (p.label) {
        nt.push_back(p);
        ps.push_back(Matrix::identity(p.dim()));
        is.push_back(Matrix::identity(p.dim()));
        continue;
      }
      std::vector<Matrix> pp, ii;
      for (auto& part : cat.decompose_labeled(*p.module)) {
        nt.push_back(TermPiece{cat.shared(part.x), p.shift + part.shift, part.x});
        pp.push_back(part.projection);
        ii.push_back(part.inclusion);
      }
      ps.push_back(vstack(pp, p.dim()));
      is.push_back(hstack(ii, p.dim()));
    }
    Y.terms[i] = nt;
    proj[i] = block_diag(ps);
    incl[i] = block_diag(is);
  }
  for (const auto& [i, m] : X.diff) Y.diff[i] = proj.at(i + 1) * m * incl.at(i);
  Y.prune();
  return Y;
}

namespace {

struct Elimination {
  int i;
  std::size_t a, b;
  Matrix phi_inv;
};

std::optional<Elimination> find_elimination(const ComplexObj& Y) {
  for (const auto& [i, m] : Y.diff) {
    const Term& src = Y.term(i);
    const Term& dst = Y.term(i + 1);
    const auto so = offsets(src), dof = offsets(dst);
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t b = 0; b < dst.size(); ++b) {
        if (src[a].label != dst[b].label || src[a].shift != dst[b].shift) continue;
        auto inv = inverse(select(m, range_indices(dof[b], dof[b + 1]), range_indices(so[a], so[a + 1])));
        if (inv) return Elimination{i, a, b, std::move(*inv)};
      }
  }
  return std::nullopt;
}

}  // namespace

ComplexObj minimalize(const ComplexObj& X, const Catalog& cat) {
  ComplexObj Y = label_terms(X, cat);
  while (auto e = find_elimination(Y)) {
    const int i = e->i;
    const auto so = offsets(Y.term(i)), dof = offsets(Y.term(i + 1));
    const Matrix m = Y.d(i), before = Y.d(i - 1), after = Y.d(i + 1);
    const auto A = range_indices(so[e->a], so[e->a + 1]);
    const auto B = range_indices(dof[e->b], dof[e->b + 1]);
    const auto Ac = complement(m.cols(), so[e->a], so[e->a + 1]);
    const auto Bc = complement(m.rows(), dof[e->b], dof[e->b + 1]);
    Y.diff[i] = select(m, Bc, Ac) - select(m, Bc, A) * e->phi_inv * select(m, B, Ac);
    Y.diff[i - 1] = select(before, Ac, range_indices(0, before.cols()));
    Y.diff[i + 1] = select(after, range_indices(0, after.rows()), Bc);
    Y.terms[i].erase(Y.terms[i].begin() + static_cast<long>(e->a));
    Y.terms[i + 1].erase(Y.terms[i + 1].begin() + static_cast<long>(e->b));
    Y.prune();
  }
  return Y;
}

// ---------------------------------------------------------------- theta on complexes

ComplexObj theta_complex(const ComplexObj& X0, const Catalog& cat, int s) {
  const ComplexObj X = label_terms(X0, cat);
  ComplexObj Y;
  Y.twist_offset = X.twist_offset;
  std::map<int, Matrix> proj, incl;
  for (const auto& [i, t] : X.terms) {
    Term nt;
    std::vector<Matrix> ps, is;
    for (const auto& p : t) {
      std::vector<Matrix> pp, ii;
      for (const auto& part : cat.theta_decomposition(*p.label, s)) {
        nt.push_back(TermPiece{cat.shared(part.x), p.shift + part.shift, part.x});
        pp.push_back(part.projection);
        ii.push_back(part.inclusion);
      }
      ps.push_back(vstack(pp, 2 * p.dim()));
      is.push_back(hstack(ii, 2 * p.dim()));
    }
    Y.terms[i] = nt;
    proj[i] = block_diag(ps);
    incl[i] = block_diag(is);
  }
  for (const auto& [i, m] : X.diff) {
    const Term& src = X.term(i);
    const Term& dst = X.term(i + 1);
    const auto so = offsets(src), dof = offsets(dst);
    Matrix th(2 * m.rows(), 2 * m.cols());
    for (std::size_t b = 0; b < dst.size(); ++b)
      for (std::size_t a = 0; a < src.size(); ++a) {
        const Matrix blk = m.block(dof[b], so[a], dst[b].dim(), src[a].dim());
        th.set_block(2 * dof[b], 2 * so[a], theta_map(blk));
      }
    Y.diff[i] = proj.at(i + 1) * th * incl.at(i);
  }
  Y.prune();
  return Y;
}

ChainMap counit_map(const ComplexObj& X0, const ComplexObj&, const Catalog& cat, int s) {
  const ComplexObj X = label_terms(X0, cat);
  ChainMap f;
  for (const auto& [i, t] : X.terms) {
    std::vector<Matrix> blocks;
    for (const auto& p : t) {
      std::vector<Matrix> ii;
      for (const auto& part : cat.theta_decomposition(*p.label, s)) ii.push_back(part.inclusion);
      blocks.push_back(counit(cat.group(), s, *p.module) * hstack(ii, 2 * p.dim()));
    }
    f.comps[i] = block_diag(blocks);
  }
  return f;
}

ChainMap unit_map(const ComplexObj& X0, const ComplexObj&, const Catalog& cat, int s) {
  const ComplexObj X = label_terms(X0, cat);
  ChainMap f;
  for (const auto& [i, t] : X.terms) {
    std::vector<Matrix> blocks;
    for (const auto& p : t) {
      std::vector<Matrix> pp;
      for (const auto& part : cat.theta_decomposition(*p.label, s)) pp.push_back(part.projection);
      blocks.push_back(vstack(pp, 2 * p.dim()) * unit(cat.group(), s, *p.module));
    }
    f.comps[i] = block_diag(blocks);
  }
  return f;
}

Placement frozen_placement() { return Placement{}; }

ComplexObj apply_standard_step(const ComplexObj& X0, const Catalog& cat, int s, const Placement& p) {
  const ComplexObj X = label_terms(X0, cat);
  const ComplexObj T = theta_complex(X, cat, s);
  ComplexObj C = cone(T, X, counit_map(X, T, cat, s));
  C = internal_shift(shift(C, p.delta_shift), p.delta_twist);
  C.twist_offset = X.twist_offset;
  return minimalize(C, cat);
}

ComplexObj apply_costandard_step(const ComplexObj& X0, const Catalog& cat, int s, const Placement& p) {
  const ComplexObj X = label_terms(X0, cat);
  const ComplexObj T = theta_complex(X, cat, s);
  ComplexObj C = cone(internal_shift(X, 2), T, unit_map(X, T, cat, s));
  C = internal_shift(shift(C, p.nabla_shift), p.nabla_twist);
  C.twist_offset = X.twist_offset;
  return minimalize(C, cat);
}

ComplexObj rouquier_complex(const Catalog& cat, const Word& word, bool standard, const Placement& p) {
  ComplexObj X = heart_object(cat, cat.group().identity());
  for (int s : word) X = standard ? apply_standard_step(X, cat, s, p) : apply_costandard_step(X, cat, s, p);
  return X;
}

ComplexObj standard_object(const Catalog& cat, WeylElt w, const Placement& p) {
  return rouquier_complex(cat, cat.group().word(w), true, p);
}

ComplexObj costandard_object(const Catalog& cat, WeylElt w, const Placement& p) {
  return rouquier_complex(cat, cat.group().word(w), false, p);
}

bool orthogonal(const ComplexObj& delta_x, const ComplexObj& nabla_y, bool same) {
  const auto t = hom_table(delta_x, nabla_y);
  if (!same) return t.empty();
  return t.size() == 1 && t.begin()->first == std::pair{0, 0} && t.begin()->second == 1;
}

std::vector<Placement> orthogonality_gate(const Catalog& cat) {
  const WeylGroup& W = cat.group();
  std::vector<Placement> passing;
  for (int ds : {-1, 0, 1})
    for (int dt : {-2, 0, 2})
      for (int ns : {-1, 0, 1})
        for (int nt : {-2, 0, 2}) {
          const Placement p{ds, dt, ns, nt};
          std::map<WeylElt, ComplexObj> delta, nabla;
          for (WeylElt x : W.elements()) {
            if (!cat.contains(x)) continue;
            delta[x] = standard_object(cat, x, p);
            nabla[x] = costandard_object(cat, x, p);
          }
          bool ok = true;
          for (const auto& [x, dx] : delta) {
            for (const auto& [y, ny] : nabla)
              if (!orthogonal(dx, ny, x == y)) {
                ok = false;
                break;
              }
            if (!ok) break;
          }
          if (ok) passing.push_back(p);
        }
  if (passing.empty()) throw GateFailure("no Delta/nabla placement satisfies orthogonality");
  return passing;
}

BigradedVS orthogonality_check(const Catalog& cat, WeylElt x, WeylElt y, int n_range, int a_range) {
  const auto full = hom_complex(standard_object(cat, x), costandard_object(cat, y));
  BigradedVS out;
  for (const auto& [key, dim] : full.dims())
    if (std::abs(key.first) <= n_range && std::abs(key.second) <= a_range) out.add(key.first, key.second, dim);
  return out;
}

// ---------------------------------------------------------------- weights

WeightTriangle weight_triangle(const ComplexObj& X, int n) {
  WeightTriangle w;
  w.upper.twist_offset = w.lower.twist_offset = X.twist_offset;
  for (const auto& [i, t] : X.terms) {
    ComplexObj& part = i > n ? w.upper : w.lower;
    part.terms[i] = t;
    (i > n ? w.inclusion : w.projection).comps[i] = Matrix::identity(total_dim(t));
  }
  for (const auto& [i, m] : X.diff) {
    if (i > n) w.upper.diff[i] = m;
    else if (i + 1 <= n) w.lower.diff[i] = m;
  }
  return w;
}

ComplexObj weight_truncate(const ComplexObj& X, Bound b, int n) {
  if (b == Bound::AtMost) return weight_triangle(X, n).lower;
  return weight_triangle(X, n - 1).upper;
}

std::optional<std::pair<int, int>> weight_range(const ComplexObj& X, const Catalog& cat) {
  return minimalize(X, cat).support();
}

// ---------------------------------------------------------------- census

std::map<CensusKey, int> delta_flag_multiplicities(const ComplexObj& X) {
  std::map<CensusKey, int> out;
  for (const auto& [i, t] : X.terms)
    for (const auto& p : t) {
      if (!p.label) throw std::invalid_argument("delta_flag_multiplicities: unlabeled piece");
      ++out[{*p.label, i, p.shift}];
    }
  return out;
}

std::map<CensusKey, int> predicted_census(const HeckeAlgebra& H, WeylElt w, bool standard) {
  const WeylGroup& W = H.group();
  const int l = W.length(w);
  HeckeElt h = H.standard(W.identity());
  const LaurentPoly v_minus_inv = LaurentPoly::monomial(1) - LaurentPoly::monomial(-1);
  for (int s : W.word(w)) h = standard ? H.mul_T(h, s) : H.mul_T(h, s) + v_minus_inv * h;
  h = LaurentPoly::monomial(-l) * h;
  std::map<CensusKey, int> out;
  for (const auto& [x, c] : H.kl_coordinates(h))
    for (const auto& [e, k] : c.terms()) {
      const int degree = e + l;
      if ((degree % 2 == 0) != (k > 0)) throw std::logic_error("predicted_census: sign does not match degree");
      out[{x, degree, -e - W.length(x)}] += static_cast<int>(k > 0 ? k : -k);
    }
  return out;
}

std::map<WeylElt, LaurentPoly> euler_characteristic(const ComplexObj& X, const WeylGroup& W) {
  std::map<WeylElt, LaurentPoly> out;
  for (const auto& [key, count] : delta_flag_multiplicities(X))
    out[key.x].add_term(-key.shift - W.length(key.x), (key.degree % 2 == 0 ? 1 : -1) * count);
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// ---------------------------------------------------------------- Ext algebra

namespace {

// Span of products g f over all pairs, flattened.
std::vector<Matrix> span_products(const std::vector<Matrix>& gs, const std::vector<Matrix>& fs) {
  RowReducer rr;
  std::vector<Matrix> out;
  for (const auto& g : gs)
    for (const auto& f : fs) {
      Matrix p = g * f;
      if (rr.add(to_sparse(p))) out.push_back(std::move(p));
    }
  return out;
}

}  // namespace

ExtAlgebra ext_algebra(const Catalog& cat, int max_length) {
  const WeylGroup& W = cat.group();
  ExtAlgebra E;
  for (WeylElt x : W.elements())
    if (W.length(x) <= max_length && cat.contains(x)) E.objects.push_back(x);
  E.pure = true;
  int top = 0;
  for (WeylElt x : E.objects)
    for (WeylElt y : E.objects) {
      auto t = hom_complex(heart_object(cat, x), heart_object(cat, y));
      for (const auto& [key, dim] : t.dims()) {
        if (key.first != 2 * key.second) E.pure = false;
        top = std::max(top, key.second);
      }
      E.table[{x, y}] = t;
    }
  // Regraded piece m: maps D_x -> D_y raising internal degree by 2m.
  auto piece = [&](WeylElt x, WeylElt y, int m) { return hom_basis(cat.module(x), cat.module(y), 2 * m); };
  // G1(x, z) = E0 E1 E0; Gm = G1 G(m-1)
  std::map<std::pair<WeylElt, WeylElt>, std::vector<Matrix>> g1, gm;
  for (WeylElt x : E.objects)
    for (WeylElt z : E.objects) {
      std::vector<Matrix> acc;
      for (WeylElt y : E.objects)
        for (WeylElt u : E.objects) {
          auto left = span_products(piece(y, u, 1), piece(x, y, 0));
          for (auto& m : span_products(piece(u, z, 0), left)) acc.push_back(std::move(m));
        }
      RowReducer rr;
      std::vector<Matrix> basis;
      for (auto& m : acc)
        if (rr.add(to_sparse(m))) basis.push_back(std::move(m));
      g1[{x, z}] = basis;
    }
  E.generated_in_degree_one = true;
  for (WeylElt x : E.objects)
    for (WeylElt z : E.objects)
      if (g1[{x, z}].size() != piece(x, z, 1).size()) E.generated_in_degree_one = false;
  gm = g1;
  for (int m = 2; m <= top && E.generated_in_degree_one; ++m) {
    std::map<std::pair<WeylElt, WeylElt>, std::vector<Matrix>> next;
    for (WeylElt x : E.objects)
      for (WeylElt z : E.objects) {
        RowReducer rr;
        std::vector<Matrix> basis;
        for (WeylElt y : E.objects)
          for (auto& p : span_products(g1[{y, z}], gm[{x, y}]))
            if (rr.add(to_sparse(p))) basis.push_back(std::move(p));
        if (basis.size() != piece(x, z, m).size()) E.generated_in_degree_one = false;
        next[{x, z}] = std::move(basis);
      }
    gm = std::move(next);
  }
  return E;
}

std::string ExtAlgebra::csv(const WeylGroup& W) const {
  std::ostringstream out;
  out << "x,y,n,m,dim\n";
  for (const auto& [xy, t] : table)
    for (const auto& [key, dim] : t.dims())
      out << '"' << W.format(xy.first) << "\",\"" << W.format(xy.second) << "\"," << key.first << ',' << key.second
          << ',' << dim << '\n';
  return out.str();
}

// ---------------------------------------------------------------- Koszul numerics

BigradedVS koszul_transform(const BigradedVS& t, int lx, int ly) {
  const int e = ly - lx;
  BigradedVS out;
  const BigradedVS k = koszul_point(t);
  for (const auto& [key, dim] : k.dims()) out.add(key.first + e, key.second + e, dim);
  return out;
}

KoszulReport koszul_numerics(const Catalog& cat) {
  const WeylGroup& W = cat.group();
  KoszulReport r;
  std::map<WeylElt, ComplexObj> delta;
  for (WeylElt x : W.elements())
    if (cat.contains(x)) delta[x] = standard_object(cat, x);
  for (const auto& [x, dx] : delta)
    for (const auto& [y, dy] : delta) r.table[{x, y}] = hom_complex(dx, dy);
  r.matched = true;
  for (const auto& [xy, t] : r.table)
    if (koszul_transform(t, W.length(xy.first), W.length(xy.second)) != t) r.matched = false;
  return r;
}

std::string KoszulReport::csv(const WeylGroup& W) const {
  std::ostringstream out;
  out << "x,y,n,m,dim\n";
  for (const auto& [xy, t] : table)
    for (const auto& [key, dim] : t.dims())
      out << '"' << W.format(xy.first) << "\",\"" << W.format(xy.second) << "\"," << key.first << ',' << key.second
          << ',' << dim << '\n';
  return out.str();
}

std::map<int, long long> degrade_complex(const ComplexObj& X) {
  std::map<int, long long> out;
  for (const auto& [i, t] : X.terms)
    for (const auto& p : t)
      for (int d : p.module->degrees()) ++out[i + d + p.shift];
  return out;
}

}  // namespace stm
