#ifndef URNPHYLO_VERIFY_HPP
#define URNPHYLO_VERIFY_HPP

#include <string>
#include <vector>

namespace urnphylo {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suites: "spectral" (1-3), "urn" (5,10), "yhk" (4,6-9), "pda" (4-7), "all".
std::vector<int> suite_criteria(const std::string& suite);  // throws ConfigError

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(const std::string& suite);

std::string acceptance_report_json(const std::vector<CriterionResult>& results);
bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace urnphylo

#endif
