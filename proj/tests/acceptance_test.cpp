// Runs the full acceptance suite and prints one pass/fail line per criterion.
#include <cstdio>

#include "urnphylo/verify.hpp"

int main() {
  bool ok = true;
  for (int id : urnphylo::suite_criteria("all")) {
    urnphylo::CriterionResult r = urnphylo::run_criterion(id);
    std::printf("%s criterion %2d: %s -- %s\n", r.pass ? "[PASS]" : "[FAIL]", r.id,
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.pass;
  }
  std::printf("%s\n", ok ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURES PRESENT");
  return ok ? 0 : 1;
}
