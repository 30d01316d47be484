#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "stm/hecke.hpp"

using namespace stm;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false, const std::string& env = {}) {
  const std::string cmd = env + std::string(STM_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("kl example") {
  const Run r = run("kl --type A --rank 3 --x 2 --w 2,1,3,2");
  CHECK(r.code == 0);
  CHECK(r.out == "1+q\n");
  const auto j = nlohmann::json::parse(run("kl --type A --rank 3 --x 2 --w 2,1,3,2 --format json").out);
  CHECK(j["P"] == "1+q");
  CHECK(j["mu"] == 1);
}

TEST_CASE("bs decompose example") {
  const Run r = run("bs --type A --rank 2 --word 1,2,1 --decompose --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  // b_s b_t b_s = b_sts + b_s; D_s sits two degrees up inside the BS module of length 3.
  WeylGroup W(build_root_system(CartanType::A, 2));
  HeckeAlgebra H(W);
  const auto exp = H.kl_expand(H.bs_character({0, 1, 0}));
  REQUIRE(exp.size() == 2);
  std::map<std::string, int> shifts;
  for (const auto& s : j["summands"]) {
    CHECK(s["count"] == 1);
    shifts[s["x"].get<std::string>()] = s["shift"].get<int>();
  }
  CHECK(shifts == std::map<std::string, int>{{"1,2,1", 0}, {"1", 2}});
  CHECK(j["grdim"] == "1+3q^2+3q^4+q^6");
}

TEST_CASE("check suite point") {
  const Run r = run("check --suite point");
  CHECK(r.code == 0);
  CHECK(r.out.find("point: PASS") != std::string::npos);
}

TEST_CASE("usage errors name the flag") {
  Run r = run("kl --type A --rank 3 --x 5 --w 1", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("--x") != std::string::npos);
  r = run("kl --type Q --rank 3 --x 1 --w 1", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("--type") != std::string::npos);
  r = run("bs --type A --rank 2", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("--word") != std::string::npos);
  r = run("kl --type A --rank 0 --x 1 --w 1", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("--rank") != std::string::npos);
  r = run("bs --type A --rank 2 --word 1 --format xml", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("--format") != std::string::npos);
  r = run("check --suite nosuch", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("--suite") != std::string::npos);
  r = run("frobnicate", true);
  CHECK(r.code == 2);
}

TEST_CASE("repeated runs are byte identical and the cache replays them") {
  const std::string args = "decompose --type B --rank 2 --word 1,2,1,2 --format json";
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto dir = std::filesystem::temp_directory_path() / ("stm-cli-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const Run c1 = run(args + " --cache-dir " + dir.string());
  const Run c2 = run(args + " --cache-dir " + dir.string());
  CHECK(c1.out == a.out);
  CHECK(c2.out == a.out);
  int entries = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) entries += e.is_regular_file();
  CHECK(entries == 1);
  std::filesystem::remove_all(dir);
  const Run e1 = run(args, false, "STM_CACHE_DIR=" + dir.string() + " ");
  CHECK(e1.out == a.out);
  CHECK(std::filesystem::exists(dir));
  std::filesystem::remove_all(dir);
}
