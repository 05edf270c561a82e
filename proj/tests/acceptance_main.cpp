// Acceptance gate: exercises every computation route end to end and prints
// one verdict line per criterion.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "cliffpart/potts.hpp"
#include "cliffpart/verify.hpp"

using namespace cliffpart;

namespace {

constexpr std::uint64_t kSeed = 42;

int g_failures = 0;

void run_criterion(int number, const std::function<SuiteResult()>& fn,
                   double budget_s = 0.0) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult s = fn();
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  bool in_budget = budget_s <= 0.0 || secs <= budget_s;
  bool pass = s.pass && in_budget;
  if (!pass) ++g_failures;
  std::printf("criterion %d %s: %s (max dev %.3g, %lld checks, %.1f s)\n",
              number, s.name.c_str(), pass ? "PASS" : "FAIL", s.max_dev,
              s.checks, secs);
  if (!s.pass && !s.detail.empty())
    std::printf("    first failure: %s\n", s.detail.c_str());
  if (s.pass && !in_budget)
    std::printf("    exceeded %.0f s budget\n", budget_s);
}

int run_quiet(const std::string& cmd) {
  std::string full = cmd + " >/dev/null 2>&1";
  int status = std::system(full.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
  const SizeGuards guards = guards_from_env();

  run_criterion(1, [&] { return suite_pipeline(kSeed, guards); }, 120.0);
  run_criterion(2, [&] { return suite_closed_form(kSeed); });
  run_criterion(3, [&] { return suite_trace_three_way(kSeed, guards); }, 60.0);
  run_criterion(4, [&] { return suite_projectors(kSeed); });
  run_criterion(5, [&] { return suite_decomposed(kSeed, guards); });
  run_criterion(6, [&] { return suite_multisum(kSeed, guards); }, 60.0);
  run_criterion(7, [&] { return suite_hyperbolic(kSeed); });
  run_criterion(8, [&] { return suite_representation(); });

  // Criterion 9 drives the installed binary as a black box: the default
  // verify run must come back green inside five minutes.
  bool cli_ok = false;
  if (argc > 1) {
    std::string bin = argv[1];
    int pc = run_quiet(bin +
                       " partition --n 2 --p 2 --q 2 --a 0.3 --b 0.2 "
                       "--method all");
    auto t0 = std::chrono::steady_clock::now();
    int vc = run_quiet(bin + " verify");
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    cli_ok = pc == 0 && vc == 0 && secs <= 300.0;
    std::printf(
        "criterion 9 cli-end-to-end: %s (partition exit %d, verify exit %d, "
        "verify %.1f s)\n",
        cli_ok ? "PASS" : "FAIL", pc, vc, secs);
  } else {
    std::printf("criterion 9 cli-end-to-end: FAIL (no binary path supplied)\n");
  }
  if (!cli_ok) ++g_failures;

  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria PASS\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
