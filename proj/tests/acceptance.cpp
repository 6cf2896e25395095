// Acceptance battery: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failure ID]... [--only ID]... [--domain PRESET]
//
// Criteria listed with --known-failure still print FAIL but do not change the
// exit status; an unexpected pass of such a criterion is reported as XPASS.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "bergman/suite.hpp"

namespace {

// Wall-clock budgets in seconds; criterion 9 carries its own limit.
double budget_for(int id) { return id == 9 ? 600.0 : 120.0; }

}  // namespace

int main(int argc, char** argv) {
  using namespace bergman;
  std::set<int> known, only;
  SuiteConfig cfg;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if ((arg == "--known-failure" || arg == "--only" || arg == "--domain") && i + 1 < argc) {
      const std::string v = argv[++i];
      if (arg == "--domain") {
        cfg.domain = v;
      } else {
        (arg == "--only" ? only : known).insert(std::atoi(v.c_str()));
      }
    } else {
      std::fprintf(stderr, "usage: acceptance [--known-failure ID]... [--only ID]... [--domain PRESET]\n");
      return 2;
    }
  }

  int unexpected = 0;
  for (const int id : selected_criteria(cfg)) {
    if (!only.empty() && !only.count(id)) continue;
    const auto& crit = acceptance_criteria()[static_cast<std::size_t>(id - 1)];
    const auto t0 = std::chrono::steady_clock::now();
    const auto entries = run_criterion(id, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = !entries.empty() && secs <= budget_for(id);
    for (const auto& e : entries) pass = pass && e.pass && e.converged;

    const bool expected_fail = known.count(id) > 0;
    const char* tag = pass ? (expected_fail ? "XPASS" : "PASS") : "FAIL";
    std::printf("%-5s %2d %-28s %7.1fs  %s%s\n", tag, id, crit.check_id.c_str(), secs, crit.title.c_str(),
                !pass && expected_fail ? " [known failure]" : "");
    for (const auto& e : entries) {
      if (e.pass && e.converged) continue;
      std::printf("        %s: value %.6e %s %.3e (expected %.6e)%s%s\n", e.check_id.c_str(), e.value,
                  to_string(e.kind), e.tol, e.expected, e.converged ? "" : " [not converged]",
                  e.note.empty() ? "" : ("  " + e.note).c_str());
    }
    if (secs > budget_for(id)) std::printf("        wall time exceeds %.0fs\n", budget_for(id));
    std::fflush(stdout);
    if (!pass && !expected_fail) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
