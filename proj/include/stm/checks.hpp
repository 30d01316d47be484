#pragma once

#include <optional>
#include <string>
#include <vector>

namespace stm {

struct CheckItem {
  std::string name;
  long long checked = 0;
  long long failures = 0;
  std::string first_failure;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckItem> items;
  [[nodiscard]] bool passed() const;
  // Sorted keys, no timings.
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_table() const;
};

struct SuiteOptions {
  std::optional<int> max_len;  // overrides the per-suite word length bounds
};

// point, coinv, hom, decompose, fibers, orthogonality, census, koszul
const std::vector<std::string>& suite_names();
// Throws std::invalid_argument on an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});
// "all" expands to every suite; results keep the requested order whatever the job count.
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opt = {}, int jobs = 1);
std::string results_json(const std::vector<SuiteResult>& results);

}  // namespace stm
