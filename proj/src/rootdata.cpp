#include "stm/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace stm {

CartanType parse_cartan_type(const std::string& text) {
  if (text.size() == 1) {
    switch (text[0]) {
      case 'A': case 'a': return CartanType::A;
      case 'B': case 'b': return CartanType::B;
      case 'C': case 'c': return CartanType::C;
      case 'D': case 'd': return CartanType::D;
      case 'G': case 'g': return CartanType::G;
      default: break;
    }
  }
  throw UnsupportedType("unknown Cartan type '" + text + "'");
}

char to_char(CartanType t) {
  switch (t) {
    case CartanType::A: return 'A';
    case CartanType::B: return 'B';
    case CartanType::C: return 'C';
    case CartanType::D: return 'D';
    case CartanType::G: return 'G';
  }
  return '?';
}

std::string RootSystem::name() const { return std::string(1, to_char(type)) + std::to_string(rank); }

long long RootSystem::weyl_order() const {
  long long n = 1;
  for (int d : fundamental_degrees) n *= d;
  return n;
}

namespace {

bool supported(CartanType t, int n) {
  switch (t) {
    case CartanType::A: return n >= 1 && n <= 4;
    case CartanType::B: return n == 2 || n == 3;
    case CartanType::C: return n == 3;
    case CartanType::D: return n == 4;
    case CartanType::G: return n == 2;
  }
  return false;
}

std::vector<Rational> unit(std::size_t dim, std::size_t i, long long c = 1) {
  std::vector<Rational> v(dim, Rational(0));
  v[i] = c;
  return v;
}

std::vector<Rational> diff(std::size_t dim, std::size_t i, std::size_t j) {
  auto v = unit(dim, i);
  v[j] = -1;
  return v;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntMatrix simple_reflection(const IntMatrix& cartan, int i) {
  const int n = static_cast<int>(cartan.size());
  IntMatrix m(n, std::vector<int>(n, 0));
  for (int k = 0; k < n; ++k) m[k][k] = 1;
  for (int j = 0; j < n; ++j) m[i][j] -= cartan[i][j];
  return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

std::vector<int> apply_matrix(const IntMatrix& m, const std::vector<int>& v) {
  std::vector<int> r(v.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

}  // namespace

RootSystem build_root_system(CartanType type, int rank) {
  if (!supported(type, rank))
    throw UnsupportedType("unsupported root system " + std::string(1, to_char(type)) + std::to_string(rank));
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;
  const auto n = static_cast<std::size_t>(rank);
  switch (type) {
    case CartanType::A:
      for (std::size_t i = 0; i < n; ++i) rs.simple_roots.push_back(diff(n + 1, i, i + 1));
      for (int d = 2; d <= rank + 1; ++d) rs.fundamental_degrees.push_back(d);
      break;
    case CartanType::B:
    case CartanType::C:
      for (std::size_t i = 0; i + 1 < n; ++i) rs.simple_roots.push_back(diff(n, i, i + 1));
      rs.simple_roots.push_back(unit(n, n - 1, type == CartanType::B ? 1 : 2));
      for (int d = 1; d <= rank; ++d) rs.fundamental_degrees.push_back(2 * d);
      break;
    case CartanType::D: {
      for (std::size_t i = 0; i + 1 < n; ++i) rs.simple_roots.push_back(diff(n, i, i + 1));
      auto last = unit(n, n - 2);
      last[n - 1] = 1;
      rs.simple_roots.push_back(last);
      rs.fundamental_degrees = {2, 4, 4, 6};
      break;
    }
    case CartanType::G:
      rs.simple_roots.push_back({Rational(1), Rational(-1), Rational(0)});
      rs.simple_roots.push_back({Rational(-2), Rational(1), Rational(1)});
      rs.fundamental_degrees = {2, 6};
      break;
  }

  rs.cartan.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational a = Rational(2) * dot(rs.simple_roots[i], rs.simple_roots[j]) /
                   dot(rs.simple_roots[i], rs.simple_roots[i]);
      rs.cartan[i][j] = static_cast<int>(a.num());
    }

  // Orbit of the simple roots under the simple reflections.
  std::vector<IntMatrix> refl;
  for (int i = 0; i < rank; ++i) refl.push_back(simple_reflection(rs.cartan, i));
  std::set<std::vector<int>> roots;
  std::deque<std::vector<int>> todo;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    roots.insert(e);
    todo.push_back(e);
  }
  while (!todo.empty()) {
    auto r = todo.front();
    todo.pop_front();
    for (const auto& s : refl) {
      auto img = apply_matrix(s, r);
      if (roots.insert(img).second) todo.push_back(img);
    }
  }
  for (const auto& r : roots)
    if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; })) rs.positive_roots.push_back(r);
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [](const auto& a, const auto& b) {
    int ha = 0, hb = 0;
    for (int c : a) ha += c;
    for (int c : b) hb += c;
    return ha != hb ? ha < hb : a > b;
  });
  return rs;
}

WeylGroup::WeylGroup(RootSystem rs) : rs_(std::move(rs)) {
  const int n = rs_.rank;
  std::vector<IntMatrix> refl;
  for (int i = 0; i < n; ++i) refl.push_back(simple_reflection(rs_.cartan, i));

  IntMatrix id(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;

  // Breadth-first enumeration of matrices.
  std::map<IntMatrix, std::size_t> seen{{id, 0}};
  std::vector<IntMatrix> mats{id};
  for (std::size_t k = 0; k < mats.size(); ++k)
    for (int s = 0; s < n; ++s) {
      IntMatrix m = mat_mul(mats[k], refl[s]);
      if (seen.emplace(m, mats.size()).second) mats.push_back(std::move(m));
    }

  const std::size_t size = mats.size();
  auto inversions = [&](const IntMatrix& m) {
    int c = 0;
    for (const auto& r : rs_.positive_roots) {
      auto img = apply_matrix(m, r);
      if (std::any_of(img.begin(), img.end(), [](int x) { return x < 0; })) ++c;
    }
    return c;
  };
  std::vector<int> len(size);
  for (std::size_t k = 0; k < size; ++k) len[k] = inversions(mats[k]);

  // Left multiplication table on BFS indices, then canonical words by peeling
  // off the smallest left descent.
  std::vector<std::vector<std::size_t>> lmul(size, std::vector<std::size_t>(n));
  for (std::size_t k = 0; k < size; ++k)
    for (int s = 0; s < n; ++s) lmul[k][s] = seen.at(mat_mul(refl[s], mats[k]));
  std::vector<Word> words(size);
  for (std::size_t k = 0; k < size; ++k) {
    std::size_t cur = k;
    while (len[cur] > 0) {
      for (int s = 0; s < n; ++s)
        if (len[lmul[cur][s]] < len[cur]) {
          words[k].push_back(s);
          cur = lmul[cur][s];
          break;
        }
    }
  }

  std::vector<std::size_t> order(size);
  for (std::size_t k = 0; k < size; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return len[a] != len[b] ? len[a] < len[b] : words[a] < words[b];
  });
  std::vector<std::uint32_t> pos(size);
  for (std::size_t i = 0; i < size; ++i) pos[order[i]] = static_cast<std::uint32_t>(i);

  elems_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    elems_[i].word = words[order[i]];
    elems_[i].length = len[order[i]];
    elems_[i].matrix = mats[order[i]];
  }
  right_.assign(size, std::vector<WeylElt>(n));
  left_.assign(size, std::vector<WeylElt>(n));
  for (std::size_t i = 0; i < size; ++i)
    for (int s = 0; s < n; ++s) {
      right_[i][s] = {pos[seen.at(mat_mul(mats[order[i]], refl[s]))]};
      left_[i][s] = {pos[lmul[order[i]][s]]};
    }
  inverse_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    WeylElt x = identity();
    const Word& w = elems_[i].word;
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = mul_right(x, *it);
    inverse_[i] = x;
  }

  // Bruhat lower ideals via the subword property.
  below_.assign(size, std::vector<bool>(size, false));
  for (std::size_t y = 0; y < size; ++y) {
    std::vector<bool>& set = below_[y];
    set[0] = true;
    for (int s : elems_[y].word) {
      std::vector<std::size_t> cur;
      for (std::size_t x = 0; x < size; ++x)
        if (set[x]) cur.push_back(x);
      for (std::size_t x : cur) set[right_[x][s].index] = true;
    }
  }
}

std::vector<WeylElt> WeylGroup::elements() const {
  std::vector<WeylElt> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = {static_cast<std::uint32_t>(i)};
  return out;
}

int WeylGroup::inversion_count(WeylElt w) const {
  int c = 0;
  for (const auto& r : rs_.positive_roots) {
    auto img = apply_matrix(matrix(w), r);
    if (std::any_of(img.begin(), img.end(), [](int x) { return x < 0; })) ++c;
  }
  return c;
}

WeylElt WeylGroup::multiply(WeylElt a, WeylElt b) const {
  for (int s : word(b)) a = mul_right(a, s);
  return a;
}

WeylElt WeylGroup::from_word(std::span<const int> w) const {
  WeylElt x = identity();
  for (int s : w) {
    if (s < 0 || s >= rank()) throw std::out_of_range("simple reflection index out of range");
    x = mul_right(x, s);
  }
  return x;
}

std::optional<Word> WeylGroup::normalize(std::span<const int> w) const {
  WeylElt x = from_word(w);
  if (static_cast<std::size_t>(length(x)) != w.size()) return std::nullopt;
  return word(x);
}

WeylElt WeylGroup::demazure_product(std::span<const int> w) const {
  WeylElt x = identity();
  for (int s : w) {
    WeylElt y = mul_right(x, s);
    if (length(y) > length(x)) x = y;
  }
  return x;
}

std::vector<WeylElt> WeylGroup::parabolic_quotient(const std::vector<int>& parabolic) const {
  std::vector<WeylElt> out;
  for (WeylElt w : elements()) {
    bool minimal = true;
    for (int s : parabolic)
      if (right_descent(w, s)) minimal = false;
    if (minimal) out.push_back(w);
  }
  return out;
}

LaurentPoly WeylGroup::poincare_polynomial(const std::vector<int>& parabolic) const {
  LaurentPoly p;
  for (WeylElt w : parabolic_quotient(parabolic)) p.add_term(length(w), 1);
  return p;
}

std::string WeylGroup::format(WeylElt w) const { return format_word(word(w)); }

WeylElt WeylGroup::parse(const std::string& text) const {
  Word w = parse_word(text, rank());
  return from_word(w);
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i] + 1;
  return os.str();
}

Word parse_word(const std::string& text, int rank) {
  Word w;
  if (text.empty() || text == "e" || text == "[]") return w;
  std::string body = text;
  if (body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    int s = 0;
    try {
      s = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad word entry '" + item + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw std::invalid_argument("bad word entry '" + item + "'");
    if (s < 1 || s > rank)
      throw std::out_of_range("simple reflection " + std::to_string(s) + " out of range 1.." + std::to_string(rank));
    w.push_back(s - 1);
  }
  return w;
}

}  // namespace stm
