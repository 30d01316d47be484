// stm: command line front end for the stm library.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stm/cache.hpp"
#include "stm/checks.hpp"
#include "stm/coinv.hpp"
#include "stm/fibers.hpp"
#include "stm/hecke.hpp"
#include "stm/homotopy.hpp"
#include "stm/rootdata.hpp"
#include "stm/smod.hpp"

using namespace stm;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& msg) : std::runtime_error(flag + ": " + msg) {}
};

struct Options {
  std::string type;
  int rank = 0;
  std::string word, x, w, parabolic;
  std::optional<int> max_len;
  std::string format = "table";
  std::string cache_dir;
  std::string suite = "all";
  int jobs = 1;
  bool decompose = false;
};

// What a subcommand needs besides type and rank.
struct Needs {
  bool word = false, x = false, w = false;
};

Word parse_flag_word(const std::string& flag, const std::string& text, int rank) {
  try {
    return parse_word(text, rank);
  } catch (const std::exception& e) {
    throw UsageError(flag, e.what());
  }
}

struct Context {
  const Options& o;
  WeylGroup W;
  Word word, x, w;

  static WeylGroup build(const Options& o) {
    if (o.type.empty()) throw UsageError("--type", "required");
    if (o.rank < 1) throw UsageError("--rank", "required and must be positive");
    CartanType t;
    try {
      t = parse_cartan_type(o.type);
    } catch (const std::exception& e) {
      throw UsageError("--type", e.what());
    }
    try {
      return WeylGroup(build_root_system(t, o.rank));
    } catch (const std::exception& e) {
      throw UsageError("--rank", e.what());
    }
  }

  Context(const Options& opts, Needs n) : o(opts), W(build(opts)) {
    if (n.word) {
      if (o.word.empty()) throw UsageError("--word", "required");
      word = parse_flag_word("--word", o.word, W.rank());
    }
    if (n.x) {
      if (o.x.empty()) throw UsageError("--x", "required");
      x = parse_flag_word("--x", o.x, W.rank());
    }
    if (n.w) {
      if (o.w.empty()) throw UsageError("--w", "required");
      w = parse_flag_word("--w", o.w, W.rank());
    }
  }

  [[nodiscard]] bool as_json() const { return o.format == "json"; }
  [[nodiscard]] std::string type_name() const { return W.root_system().name(); }
  [[nodiscard]] json header() const { return {{"schema", kSchemaVersion}, {"type", type_name()}}; }
};

std::string dump(const json& j) { return j.dump() + "\n"; }

std::optional<Cache> open_cache(const Options& o) {
  if (!o.cache_dir.empty()) return Cache(o.cache_dir);
  if (auto p = Cache::from_environment()) return Cache(*p);
  return std::nullopt;
}

// ------------------------------------------------------------------ commands

std::string cmd_weyl(const Context& c) {
  std::vector<int> par;
  if (!c.o.parabolic.empty()) par = parse_flag_word("--parabolic", c.o.parabolic, c.W.rank());
  std::vector<WeylElt> elems = par.empty() ? c.W.elements() : c.W.parabolic_quotient(par);
  if (c.o.max_len) std::erase_if(elems, [&](WeylElt e) { return c.W.length(e) > *c.o.max_len; });
  const LaurentPoly poin = c.W.poincare_polynomial(par);
  if (c.as_json()) {
    json j = c.header();
    j["order"] = c.W.size();
    j["poincare"] = poin.pretty();
    j["elements"] = json::array();
    for (WeylElt e : elems) j["elements"].push_back({{"w", c.W.format(e)}, {"length", c.W.length(e)}});
    return dump(j);
  }
  std::ostringstream os;
  os << c.type_name() << ", |W| = " << c.W.size() << ", Poincare polynomial " << poin.pretty() << '\n';
  for (WeylElt e : elems) os << c.W.length(e) << '\t' << c.W.format(e) << '\n';
  return os.str();
}

std::string cmd_kl(const Context& c) {
  const WeylElt x = c.W.from_word(c.x), w = c.W.from_word(c.w);
  KLPolynomials kl(c.W);
  const LaurentPoly p = kl(x, w);
  if (c.as_json()) {
    json j = c.header();
    j["x"] = c.W.format(x);
    j["w"] = c.W.format(w);
    j["P"] = p.pretty();
    j["mu"] = kl.mu(x, w);
    return dump(j);
  }
  return p.pretty() + "\n";
}

std::string cmd_hecke(const Context& c) {
  HeckeAlgebra H(c.W);
  const auto exp = H.kl_expand(H.bs_character(c.word));
  if (c.as_json()) {
    json j = c.header();
    j["word"] = format_word(c.word);
    j["kl_expansion"] = json::array();
    for (const auto& [x, p] : exp) j["kl_expansion"].push_back({{"x", c.W.format(x)}, {"coeff", p.pretty("v")}});
    return dump(j);
  }
  std::ostringstream os;
  for (const auto& [x, p] : exp) os << "b_" << c.W.format(x) << '\t' << p.pretty("v") << '\n';
  return os.str();
}

std::string cmd_coinv(const Context& c) {
  CoinvariantAlgebra C(c.W);
  std::optional<Subalgebra> sub;
  if (!c.o.parabolic.empty()) sub = C.partial_coinvariants(parse_flag_word("--parabolic", c.o.parabolic, c.W.rank()));
  if (c.as_json()) {
    json j = c.header();
    j["dim"] = C.dim();
    j["hilbert"] = C.hilbert().pretty();
    j["basis"] = json::array();
    for (const auto& m : C.basis()) j["basis"].push_back(Poly::monomial(m).to_string());
    j["invariants"] = json::array();
    for (const auto& f : C.invariants()) j["invariants"].push_back(f.to_string());
    if (sub) j["parabolic_hilbert"] = sub->hilbert.pretty();
    return dump(j);
  }
  std::ostringstream os;
  os << "dim " << C.dim() << "\nhilbert " << C.hilbert().pretty() << '\n';
  if (sub) os << "parabolic hilbert " << sub->hilbert.pretty() << '\n';
  for (const auto& f : C.invariants()) os << "invariant " << f.to_string() << '\n';
  return os.str();
}

json summands_json(const WeylGroup& W, const std::map<std::pair<WeylElt, int>, int>& m) {
  json arr = json::array();
  for (const auto& [k, n] : m) arr.push_back({{"x", W.format(k.first)}, {"shift", k.second}, {"count", n}});
  return arr;
}

std::map<std::pair<WeylElt, int>, int> decompose_word(const WeylGroup& W, const Word& word) {
  Catalog cat(W, static_cast<int>(word.size()));
  std::map<std::pair<WeylElt, int>, int> got;
  for (const auto& s : cat.decompose_labeled(bott_samelson(W, word))) ++got[{s.x, s.shift}];
  return got;
}

std::string summands_table(const WeylGroup& W, const std::map<std::pair<WeylElt, int>, int>& m) {
  std::ostringstream os;
  for (const auto& [k, n] : m) os << n << " x D_" << W.format(k.first) << "<" << k.second << ">\n";
  return os.str();
}

std::string cmd_bs(const Context& c) {
  const GradedModule M = bott_samelson(c.W, c.word);
  std::optional<std::map<std::pair<WeylElt, int>, int>> sums;
  if (c.o.decompose) sums = decompose_word(c.W, c.word);
  if (c.as_json()) {
    json j = c.header();
    j["word"] = format_word(c.word);
    j["dim"] = M.dim();
    j["grdim"] = M.grdim().pretty();
    if (sums) j["summands"] = summands_json(c.W, *sums);
    return dump(j);
  }
  std::ostringstream os;
  os << "BS(" << format_word(c.word) << "): dim " << M.dim() << ", grdim " << M.grdim().pretty() << '\n';
  if (sums) os << summands_table(c.W, *sums);
  return os.str();
}

std::string cmd_hom(const Context& c) {
  HeckeAlgebra H(c.W);
  const LaurentPoly got = graded_hom(bott_samelson(c.W, c.x), bott_samelson(c.W, c.w));
  const LaurentPoly want = H.hom_pairing(c.x, c.w);
  if (c.as_json()) {
    json j = c.header();
    j["from"] = format_word(c.x);
    j["to"] = format_word(c.w);
    j["graded_hom"] = got.pretty();
    j["hom_pairing"] = want.pretty();
    j["agree"] = got == want;
    return dump(j);
  }
  std::ostringstream os;
  os << "graded hom  " << got.pretty() << "\nhecke form  " << want.pretty() << '\n'
     << (got == want ? "agree" : "DISAGREE") << '\n';
  return os.str();
}

std::string cmd_decompose(const Context& c) {
  HeckeAlgebra H(c.W);
  const auto got = decompose_word(c.W, c.word);
  const auto want = predicted_summands(H, c.word);
  if (c.as_json()) {
    json j = c.header();
    j["word"] = format_word(c.word);
    j["summands"] = summands_json(c.W, got);
    j["predicted"] = summands_json(c.W, want);
    j["agree"] = got == want;
    return dump(j);
  }
  return summands_table(c.W, got) + (got == want ? "matches the KL expansion\n" : "DIFFERS from the KL expansion\n");
}

std::string cmd_fiber(const Context& c) {
  const WhitneyTateReport r = whitney_tate_witness(c.W, c.word);
  if (c.as_json()) {
    json j = c.header();
    j["report"] = json::parse(r.to_json(c.W));
    return dump(j);
  }
  std::ostringstream os;
  for (const auto& [w, p] : r.cells) os << c.W.format(w) << '\t' << p.pretty() << '\n';
  os << "paved " << (r.paved ? "yes" : "no") << ", total " << (r.total_check ? "ok" : "FAILED") << '\n';
  return os.str();
}

std::string census_table(const WeylGroup& W, const std::map<CensusKey, int>& m) {
  std::vector<std::pair<CensusKey, int>> rows(m.begin(), m.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first.degree < b.first.degree; });
  std::ostringstream os;
  for (const auto& [k, n] : rows) os << "  degree " << k.degree << ": " << n << " x D_" << W.format(k.x) << "<" << k.shift << ">\n";
  return os.str();
}

json census_json(const WeylGroup& W, const std::map<CensusKey, int>& m) {
  json arr = json::array();
  for (const auto& [k, n] : m)
    arr.push_back({{"degree", k.degree}, {"x", W.format(k.x)}, {"shift", k.shift}, {"count", n}});
  return arr;
}

std::string cmd_delta(const Context& c) {
  const WeylElt w = c.W.from_word(c.w);
  Catalog cat(c.W, c.W.length(w));
  const ComplexObj d = standard_object(cat, w), n = costandard_object(cat, w);
  if (c.as_json()) {
    json j = c.header();
    j["w"] = c.W.format(w);
    j["standard"] = json::parse(d.serialize(c.W));
    j["costandard"] = json::parse(n.serialize(c.W));
    j["standard_census"] = census_json(c.W, delta_flag_multiplicities(d));
    j["costandard_census"] = census_json(c.W, delta_flag_multiplicities(n));
    return dump(j);
  }
  return "Delta_" + c.W.format(w) + ":\n" + census_table(c.W, delta_flag_multiplicities(d)) + "nabla_" +
         c.W.format(w) + ":\n" + census_table(c.W, delta_flag_multiplicities(n));
}

std::string cmd_ext(const Context& c) {
  const int L = c.o.max_len.value_or(c.W.length(c.W.longest()));
  Catalog cat(c.W, L);
  const ExtAlgebra E = ext_algebra(cat, L);
  if (c.as_json()) {
    json j = c.header();
    j["pure"] = E.pure;
    j["generated_in_degree_one"] = E.generated_in_degree_one;
    j["csv"] = E.csv(c.W);
    return dump(j);
  }
  return E.csv(c.W) + "pure " + (E.pure ? "yes" : "no") + ", generated in degree one " +
         (E.generated_in_degree_one ? "yes" : "no") + "\n";
}

std::string cmd_koszul(const Context& c) {
  const int L = c.o.max_len.value_or(c.W.length(c.W.longest()));
  Catalog cat(c.W, L);
  const KoszulReport r = koszul_numerics(cat);
  if (c.as_json()) {
    json j = c.header();
    j["matched"] = r.matched;
    j["csv"] = r.csv(c.W);
    return dump(j);
  }
  return r.csv(c.W) + "matched " + (r.matched ? "yes" : "no") + "\n";
}

int cmd_check(const Options& o) {
  if (o.jobs < 1) throw UsageError("--jobs", "must be at least 1");
  SuiteOptions so;
  so.max_len = o.max_len;
  std::vector<SuiteResult> results;
  try {
    results = run_suites(o.suite, so, o.jobs);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--suite", e.what());
  }
  if (auto cache = open_cache(o)) {
    const std::string args = o.max_len ? std::to_string(*o.max_len) : "default";
    for (const auto& r : results) cache->put(cache_key(kSchemaVersion, "-", 0, "check/" + r.suite, args), r.to_json());
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed();
  if (o.format == "json") {
    std::cout << results_json(results) << '\n';
  } else {
    for (const auto& r : results) std::cout << r.to_table();
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return ok ? 0 : 1;
}

using Handler = std::string (*)(const Context&);

int run_command(const std::string& name, const Options& o, Needs needs, Handler h) {
  const Context c(o, needs);
  std::optional<Cache> cache = open_cache(o);
  std::string key;
  if (cache) {
    const json args = {format_word(c.word), format_word(c.x), format_word(c.w), o.parabolic,
                       o.max_len ? *o.max_len : -1, o.decompose, o.format};
    key = cache_key(kSchemaVersion, c.type_name(), c.W.rank(), name, args.dump());
    if (auto hit = cache->get(key)) {
      std::cout << *hit;
      return 0;
    }
  }
  const std::string out = h(c);
  if (cache) cache->put(key, out);
  std::cout << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Soergel modules, KL polynomials and mixed Tate numerics"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--type", o.type, "Cartan type: A, B, C, D or G");
    sub->add_option("--rank", o.rank, "Rank")->check(CLI::Range(1, 8));
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--cache-dir", o.cache_dir, "Cache directory (default: $STM_CACHE_DIR)");
  };
  struct Cmd {
    const char* name;
    const char* help;
    Needs needs;
    Handler handler;
  };
  const std::vector<Cmd> cmds{
      {"weyl", "List group elements or minimal coset representatives", {}, cmd_weyl},
      {"kl", "Kazhdan-Lusztig polynomial P_{x,w}", {false, true, true}, cmd_kl},
      {"hecke", "KL basis expansion of b_{s1}...b_{sk}", {true, false, false}, cmd_hecke},
      {"coinv", "Coinvariant algebra data", {}, cmd_coinv},
      {"bs", "Bott-Samelson module of a word", {true, false, false}, cmd_bs},
      {"hom", "Graded hom between BS(--x) and BS(--w) against the Hecke form", {false, true, true}, cmd_hom},
      {"decompose", "Indecomposable summands of BS(--word) against the KL expansion", {true, false, false},
       cmd_decompose},
      {"fiber", "Fiber pavings of the Bott-Samelson resolution", {true, false, false}, cmd_fiber},
      {"delta", "Minimal standard and costandard complexes of --w", {false, false, true}, cmd_delta},
      {"ext", "Ext algebra of the heart objects", {}, cmd_ext},
      {"koszul", "Hom tables of standard objects under the Koszul dictionary", {}, cmd_koszul},
  };
  std::map<CLI::App*, const Cmd*> handlers;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    common(sub);
    if (cmd.needs.word || std::string(cmd.name) == "bs") sub->add_option("--word", o.word, "Word, e.g. 1,2,1");
    if (cmd.needs.x) sub->add_option("--x", o.x, "Element or word");
    if (cmd.needs.w) sub->add_option("--w", o.w, "Element or word");
    const std::string n = cmd.name;
    if (n == "weyl" || n == "coinv") sub->add_option("--parabolic", o.parabolic, "Simple reflections of a parabolic");
    if (n == "weyl" || n == "ext" || n == "koszul") sub->add_option("--max-len", o.max_len, "Length bound");
    if (n == "bs") sub->add_flag("--decompose", o.decompose, "Also list indecomposable summands");
    handlers[sub] = &cmd;
  }
  CLI::App* check = app.add_subcommand("check", "Run acceptance suites");
  check->add_option("--suite", o.suite, "Suite name or all");
  check->add_option("--max-len", o.max_len, "Word length bound for the word-range suites")->check(CLI::NonNegativeNumber);
  check->add_option("--jobs", o.jobs, "Suites run in parallel");
  check->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  check->add_option("--cache-dir", o.cache_dir, "Cache directory (default: $STM_CACHE_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(o);
    for (const auto& [sub, cmd] : handlers)
      if (sub->parsed()) return run_command(cmd->name, o, cmd->needs, cmd->handler);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
