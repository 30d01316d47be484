// Acceptance runner: one PASS/FAIL line per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "stm/cache.hpp"
#include "stm/checks.hpp"

using namespace stm;

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  double budget_seconds;  // 0: none
};

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(STM_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << title << "  (" << detail << ")" << std::endl;
}

bool determinism() {
  namespace fs = std::filesystem;
  const Run a = run_cli("check --suite all --format json");
  const Run b = run_cli("check --suite all --format json");
  const bool identical = a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out;
  const bool in_process = a.out == results_json(run_suites("all")) + "\n";

  const fs::path dir = fs::temp_directory_path() / ("stm-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  bool cache_ok = true;
  {
    Cache c(dir);
    const std::string key = cache_key(kSchemaVersion, "A3", 3, "check", "all");
    cache_ok = cache_ok && c.put(key, a.out) && c.get(key) == std::optional<std::string>(a.out);
    cache_ok = cache_ok && !c.get(cache_key(kSchemaVersion + 1, "A3", 3, "check", "all")).has_value();
  }
  const std::string args = "decompose --type A --rank 3 --word 2,1,3,2 --format json";
  const Run plain = run_cli(args);
  const Run miss = run_cli(args + " --cache-dir " + dir.string());
  const Run hit = run_cli(args + " --cache-dir " + dir.string());
  cache_ok = cache_ok && plain.code == 0 && plain.out == miss.out && miss.out == hit.out;
  fs::remove_all(dir);

  report(9, identical && in_process && cache_ok, "determinism and cache round trip",
         std::string("two CLI runs ") + (identical ? "identical" : "DIFFER") + ", in-process " +
             (in_process ? "identical" : "DIFFERS") + ", cache " + (cache_ok ? "round-trips" : "BROKEN"));
  return identical && in_process && cache_ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "point", "point category: diagonal homs, K on twists, K o K = id, weight q-2p", 1},
      {2, "coinv", "coinvariant algebra: dimension, Hilbert series, divided differences", 30},
      {3, "hom", "graded hom of Bott-Samelson modules = Hecke pairing", 300},
      {4, "decompose", "Bott-Samelson decomposition = KL expansion", 300},
      {5, "fibers", "fiber pavings, decomposition consistency, even local characters", 120},
      {6, "orthogonality", "standard/costandard orthogonality", 600},
      {7, "census", "minimal complex census = inverse KL data", 0},
      {8, "koszul", "Ext purity, degree one generation, Koszul hom tables", 600},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      const SuiteResult r = run_suite(c.suite);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      long long checked = 0, failed = 0;
      std::string first;
      for (const auto& it : r.items) {
        checked += it.checked;
        failed += it.failures;
        if (first.empty() && it.failures) first = it.name + ": " + it.first_failure;
      }
      const bool in_time = c.budget_seconds == 0 || secs < c.budget_seconds;
      ok = r.passed() && in_time;
      char t[32];
      std::snprintf(t, sizeof t, "%.2fs", secs);
      detail = std::to_string(checked) + " checks, " + std::to_string(failed) + " failed, " + t;
      if (c.budget_seconds > 0) {
        std::snprintf(t, sizeof t, "%.0fs", c.budget_seconds);
        detail += std::string(" of ") + t;
      }
      if (!first.empty()) detail += "; first failure " + first;
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
    }
    report(c.id, ok, c.title, detail);
    all = all && ok;
  }
  all = determinism() && all;
  return all ? 0 : 1;
}
