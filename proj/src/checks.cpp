#include "stm/checks.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stm/coinv.hpp"
#include "stm/fibers.hpp"
#include "stm/hecke.hpp"
#include "stm/homotopy.hpp"
#include "stm/pointcat.hpp"
#include "stm/rootdata.hpp"
#include "stm/smod.hpp"

namespace stm {

namespace {

using Types = std::vector<std::pair<CartanType, int>>;

class Recorder {
 public:
  explicit Recorder(std::string name) { item_.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& what) {
    ++item_.checked;
    if (ok) return;
    if (item_.failures++ == 0) item_.first_failure = what();
  }
  CheckItem done() { return std::move(item_); }

 private:
  CheckItem item_;
};

std::string type_name(CartanType t, int n) { return std::string(1, to_char(t)) + std::to_string(n); }

std::vector<Word> all_words(int rank, int max_len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int s = 0; s < rank; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

BigradedVS random_object(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(-4, 4), dim(0, 3), count(1, 5);
  BigradedVS a;
  for (int i = count(rng); i > 0; --i) a.add(idx(rng), idx(rng), dim(rng));
  return a;
}

int longest_length(const WeylGroup& W) { return W.length(W.longest()); }

// ------------------------------------------------------------------ suites

SuiteResult point_suite(const SuiteOptions&) {
  SuiteResult r{"point", {}};
  {
    Recorder rec("hom_dims diagonal law");
    for (int q = -3; q <= 3; ++q)
      for (int p = -3; p <= 3; ++p) {
        const long long d = hom_dims(BigradedVS::unit(), BigradedVS::unit(q, p)).dim(0, 0);
        rec.check(d == (q == 0 && p == 0 ? 1 : 0), [&] {
          return "Hom(Q, Q(" + std::to_string(p) + ")[" + std::to_string(q) + "]) = " + std::to_string(d);
        });
      }
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
      const BigradedVS a = random_object(rng);
      long long sq = 0;
      for (const auto& [k, d] : a.dims()) sq += d * d;
      rec.check(hom_dims(a, a).dim(0, 0) == sq, [&] { return "End of " + a.serialize(); });
    }
    r.items.push_back(rec.done());
  }
  {
    Recorder rec("K(Q(n)) = Q(-n)[-2n]");
    for (int n = -6; n <= 6; ++n)
      rec.check(koszul_point(BigradedVS::unit(0, n)) == BigradedVS::unit(-2 * n, -n),
                [&] { return "n = " + std::to_string(n); });
    r.items.push_back(rec.done());
  }
  {
    Recorder rec("K o K = id on random objects");
    std::mt19937 rng(13);
    for (int t = 0; t < 100; ++t) {
      const BigradedVS a = random_object(rng);
      rec.check(koszul_point(koszul_point(a)) == a, [&] { return a.serialize(); });
    }
    r.items.push_back(rec.done());
  }
  {
    Recorder rec("weight q-2p on pure pieces");
    rec.check(weight(0, 0) == 0, [] { return "weight(Q)"; });
    rec.check(weight(2, 1) == 0, [] { return "weight(Q(1)[2])"; });
    std::mt19937 rng(21);
    for (int t = 0; t < 100; ++t) {
      const BigradedVS a = random_object(rng);
      for (const auto& [k, d] : a.dims()) {
        const int w = weight(k.first, k.second);
        rec.check(w == k.first - 2 * k.second, [&] { return "piece " + a.serialize(); });
        const BigradedVS piece = BigradedVS::unit(k.first, k.second, d);
        const bool pure = weight_truncate(piece, Bound::AtMost, 0) == piece &&
                          weight_truncate(piece, Bound::AtLeast, 0) == piece;
        rec.check(pure == (w == 0), [&] { return "purity of " + piece.serialize(); });
      }
    }
    r.items.push_back(rec.done());
  }
  return r;
}

LaurentPoly expected_hilbert(const RootSystem& rs) {
  LaurentPoly p(1);
  for (int d : rs.fundamental_degrees) {
    LaurentPoly f;
    for (int k = 0; k < d; ++k) f.add_term(2 * k, 1);
    p *= f;
  }
  return p;
}

SuiteResult coinv_suite(const SuiteOptions&) {
  SuiteResult r{"coinv", {}};
  const Types types{{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::A, 3}, {CartanType::B, 2}, {CartanType::G, 2}};
  Recorder dims("dim C = |W| and Hilbert series"), sq("d_s^2 = 0"), leib("twisted Leibniz"), braid("braid relations");
  for (auto [t, n] : types) {
    const std::string tn = type_name(t, n);
    WeylGroup W(build_root_system(t, n));
    CoinvariantAlgebra C(W);
    dims.check(C.dim() == W.size(), [&] { return tn + " dim " + std::to_string(C.dim()); });
    dims.check(C.hilbert() == expected_hilbert(W.root_system()), [&] { return tn + " " + C.hilbert().pretty(); });
    std::vector<Matrix> d;
    for (int s = 0; s < n; ++s) d.push_back(C.demazure_matrix(s));
    for (int s = 0; s < n; ++s) sq.check((d[s] * d[s]).is_zero(), [&] { return tn + " s=" + std::to_string(s + 1); });
    const auto& rs = W.root_system();
    for (int s = 0; s < n; ++s)
      for (int u = s + 1; u < n; ++u) {
        const int prod = rs.cartan[s][u] * rs.cartan[u][s];
        const int m = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
        Matrix lhs = Matrix::identity(C.dim()), rhs = Matrix::identity(C.dim());
        for (int k = 0; k < m; ++k) {
          lhs = lhs * d[k % 2 ? u : s];
          rhs = rhs * d[k % 2 ? s : u];
        }
        braid.check(lhs == rhs, [&] { return tn + " " + std::to_string(s + 1) + "," + std::to_string(u + 1); });
      }
    for (int s = 0; s < n; ++s)
      for (std::size_t a = 0; a < C.dim(); ++a)
        for (std::size_t b = 0; b < C.dim(); ++b) {
          const Poly f = Poly::monomial(C.basis()[a]), g = Poly::monomial(C.basis()[b]);
          const auto lhs = C.normal_form(demazure(W, s, f * g));
          const auto rhs = C.normal_form(demazure(W, s, f) * g + reflect(W, s, f) * demazure(W, s, g));
          leib.check(lhs == rhs, [&] { return tn + " " + f.to_string() + " * " + g.to_string(); });
        }
  }
  r.items.push_back(dims.done());
  r.items.push_back(sq.done());
  r.items.push_back(leib.done());
  r.items.push_back(braid.done());
  return r;
}

SuiteResult hom_suite(const SuiteOptions& opt) {
  SuiteResult r{"hom", {}};
  const int L = opt.max_len.value_or(4);
  for (auto [t, n] : Types{{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::B, 2}}) {
    const std::string tn = type_name(t, n);
    WeylGroup W(build_root_system(t, n));
    HeckeAlgebra H(W);
    Recorder rec(tn + " graded_hom(BS, BS) = hom_pairing, words of length <= " + std::to_string(L));
    const auto words = all_words(n, L);
    std::vector<GradedModule> bs;
    bs.reserve(words.size());
    for (const auto& w : words) bs.push_back(bott_samelson(W, w));
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = 0; j < words.size(); ++j) {
        const LaurentPoly got = graded_hom(bs[i], bs[j]);
        const LaurentPoly want = H.hom_pairing(words[i], words[j]);
        rec.check(got == want, [&] {
          return format_word(words[i]) + " vs " + format_word(words[j]) + ": " + got.pretty() + " != " + want.pretty();
        });
      }
    r.items.push_back(rec.done());
  }
  return r;
}

std::map<std::pair<WeylElt, int>, int> summand_multiset(const Catalog& cat, const Word& word) {
  std::map<std::pair<WeylElt, int>, int> got;
  for (const auto& s : cat.decompose_labeled(bott_samelson(cat.group(), word))) ++got[{s.x, s.shift}];
  return got;
}

std::string multiset_string(const WeylGroup& W, const std::map<std::pair<WeylElt, int>, int>& m) {
  std::ostringstream os;
  for (const auto& [k, c] : m) os << c << "xD_" << W.format(k.first) << "<" << k.second << "> ";
  return os.str();
}

SuiteResult decompose_suite(const SuiteOptions& opt) {
  SuiteResult r{"decompose", {}};
  const int L = opt.max_len.value_or(4);
  for (auto [t, n] : Types{{CartanType::A, 2}, {CartanType::B, 2}}) {
    const std::string tn = type_name(t, n);
    WeylGroup W(build_root_system(t, n));
    HeckeAlgebra H(W);
    Catalog cat(W, std::min(L, longest_length(W)));
    Recorder rec(tn + " BS decomposition = KL expansion, words of length <= " + std::to_string(L));
    for (const auto& word : all_words(n, L)) {
      const auto got = summand_multiset(cat, word);
      const auto want = predicted_summands(H, word);
      rec.check(got == want, [&] {
        return format_word(word) + ": " + multiset_string(W, got) + "vs " + multiset_string(W, want);
      });
    }
    r.items.push_back(rec.done());
  }
  {
    WeylGroup W(build_root_system(CartanType::A, 3));
    HeckeAlgebra H(W);
    const Word word{1, 0, 2, 1};
    const WeylElt w = W.from_word(word);
    Catalog cat(W, static_cast<int>(word.size()));
    Recorder rec("A3 BS(2,1,3,2) with P_{e,w} = 1+q");
    const auto got = summand_multiset(cat, word);
    const auto want = predicted_summands(H, word);
    rec.check(got == want, [&] { return multiset_string(W, got) + "vs " + multiset_string(W, want); });
    const LaurentPoly p = H.kl()(W.identity(), w);
    rec.check(p == LaurentPoly(1) + LaurentPoly::monomial(1), [&] { return "P_{e,w} = " + p.pretty(); });
    r.items.push_back(rec.done());
  }
  return r;
}

SuiteResult fibers_suite(const SuiteOptions& opt) {
  SuiteResult r{"fibers", {}};
  const int L = opt.max_len.value_or(5);
  Recorder sum("sum_w q^l(w) F_w = (1+q)^len, words of length <= " + std::to_string(L));
  Recorder cons("F = sum of multiplicities times local characters, words of length <= " + std::to_string(L));
  Recorder even("local characters even");
  for (auto [t, n] : Types{{CartanType::A, 1},
                           {CartanType::A, 2},
                           {CartanType::B, 2},
                           {CartanType::G, 2},
                           {CartanType::A, 3},
                           {CartanType::B, 3},
                           {CartanType::C, 3}}) {
    const std::string tn = type_name(t, n);
    WeylGroup W(build_root_system(t, n));
    KLPolynomials kl(W);
    Catalog cat(W, std::min(L, longest_length(W)));
    for (const auto& word : all_words(n, L)) {
      sum.check(global_sum_holds(W, word), [&] { return tn + " " + format_word(word); });
      cons.check(decomposition_consistent(cat, kl, word), [&] { return tn + " " + format_word(word); });
    }
    for (WeylElt w : W.elements())
      for (WeylElt x : W.elements()) {
        if (!W.bruhat_leq(x, w)) continue;
        const LaurentPoly c = local_character(kl, x, w);
        bool ok = true;
        for (const auto& [d, k] : c.terms()) ok = ok && d % 2 == 0;
        even.check(ok, [&] { return tn + " x=" + W.format(x) + " w=" + W.format(w) + ": " + c.pretty(); });
      }
  }
  r.items.push_back(sum.done());
  r.items.push_back(cons.done());
  r.items.push_back(even.done());
  return r;
}

SuiteResult orthogonality_suite(const SuiteOptions&) {
  SuiteResult r{"orthogonality", {}};
  for (auto [t, n] : Types{{CartanType::A, 2}, {CartanType::B, 2}}) {
    const std::string tn = type_name(t, n);
    WeylGroup W(build_root_system(t, n));
    const int l0 = longest_length(W);
    Catalog cat(W, l0);
    Recorder rec(tn + " Hom(Delta_x, nabla_y[n](a)) = delta, |n| <= " + std::to_string(2 * l0) +
                 ", |a| <= " + std::to_string(l0));
    for (WeylElt x : W.elements())
      for (WeylElt y : W.elements()) {
        const BigradedVS got = orthogonality_check(cat, x, y, 2 * l0, l0);
        const BigradedVS want = x == y ? BigradedVS::unit() : BigradedVS();
        rec.check(got == want, [&] { return "x=" + W.format(x) + " y=" + W.format(y) + ": " + got.serialize(); });
      }
    r.items.push_back(rec.done());
  }
  return r;
}

SuiteResult census_suite(const SuiteOptions&) {
  SuiteResult r{"census", {}};
  for (auto [t, n] : Types{{CartanType::A, 2}, {CartanType::B, 2}}) {
    const std::string tn = type_name(t, n);
    WeylGroup W(build_root_system(t, n));
    HeckeAlgebra H(W);
    Catalog cat(W, longest_length(W));
    Recorder rec(tn + " minimal Delta_w, nabla_w census = inverse KL data");
    for (WeylElt w : W.elements())
      for (bool standard : {true, false}) {
        const ComplexObj X = standard ? standard_object(cat, w) : costandard_object(cat, w);
        rec.check(X.is_valid() && delta_flag_multiplicities(X) == predicted_census(H, w, standard),
                  [&] { return std::string(standard ? "Delta_" : "nabla_") + W.format(w); });
      }
    r.items.push_back(rec.done());
  }
  return r;
}

SuiteResult koszul_suite(const SuiteOptions&) {
  SuiteResult r{"koszul", {}};
  for (auto [t, n] : Types{{CartanType::A, 1}, {CartanType::A, 2}}) {
    const std::string tn = type_name(t, n);
    WeylGroup W(build_root_system(t, n));
    const int l0 = longest_length(W);
    Catalog cat(W, l0);
    const ExtAlgebra E = ext_algebra(cat, l0);
    Recorder ext(tn + " Ext purity and degree one generation");
    ext.check(E.pure, [&] { return tn + " Ext not pure"; });
    ext.check(E.generated_in_degree_one, [&] { return tn + " Ext not generated in degree one"; });
    r.items.push_back(ext.done());
    Recorder kz(tn + " Hom tables of standard objects under the K-dictionary");
    const KoszulReport k = koszul_numerics(cat);
    for (const auto& [xy, tab] : k.table) {
      const BigradedVS img = koszul_transform(tab, W.length(xy.first), W.length(xy.second));
      kz.check(img == tab, [&] { return "x=" + W.format(xy.first) + " y=" + W.format(xy.second); });
    }
    kz.check(k.matched, [] { return std::string("report not matched"); });
    r.items.push_back(kz.done());
  }
  return r;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg{
      {"point", point_suite},   {"coinv", coinv_suite},   {"hom", hom_suite},
      {"decompose", decompose_suite}, {"fibers", fibers_suite}, {"orthogonality", orthogonality_suite},
      {"census", census_suite}, {"koszul", koszul_suite}};
  return reg;
}

nlohmann::json suite_json(const SuiteResult& s) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : s.items)
    items.push_back(
        {{"name", it.name}, {"checked", it.checked}, {"failures", it.failures}, {"first_failure", it.first_failure}});
  return {{"suite", s.suite}, {"passed", s.passed()}, {"items", items}};
}

}  // namespace

bool SuiteResult::passed() const {
  if (items.empty()) return false;
  for (const auto& it : items)
    if (it.failures != 0 || it.checked == 0) return false;
  return true;
}

std::string SuiteResult::to_json() const { return suite_json(*this).dump(); }

std::string SuiteResult::to_table() const {
  std::ostringstream os;
  os << suite << ": " << (passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& it : items) {
    os << "  " << (it.failures == 0 && it.checked > 0 ? "ok  " : "FAIL") << ' ' << it.name << " (" << it.checked
       << " checks";
    if (it.failures) os << ", " << it.failures << " failed; first: " << it.first_failure;
    os << ")\n";
  }
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opt, int jobs) {
  std::vector<std::string> names;
  if (name == "all") {
    names = suite_names();
  } else {
    for (const auto& n : suite_names())
      if (n == name) names.push_back(n);
    if (names.empty()) throw std::invalid_argument("unknown suite '" + name + "'");
  }
  std::vector<SuiteResult> out(names.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < names.size(); ++i) out[i] = run_suite(names[i], opt);
    return out;
  }
  std::size_t next = 0;
  while (next < names.size()) {
    std::vector<std::future<SuiteResult>> batch;
    for (int j = 0; j < jobs && next < names.size(); ++j, ++next)
      batch.push_back(std::async(std::launch::async, [&, i = next] { return run_suite(names[i], opt); }));
    std::size_t i = next - batch.size();
    for (auto& f : batch) out[i++] = f.get();
  }
  return out;
}

std::string results_json(const std::vector<SuiteResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = !results.empty();
  for (const auto& s : results) {
    arr.push_back(suite_json(s));
    all = all && s.passed();
  }
  return nlohmann::json{{"passed", all}, {"suites", arr}}.dump();
}

}  // namespace stm
