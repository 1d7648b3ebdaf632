#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace canonica::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240607;
  std::string fixtures_dir;  // criterion 10 fails when empty or unreadable
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const Options& opt);
std::vector<CriterionResult> run_all(const Options& opt);

/// "criterion 3: PASS regularization (...)"
std::string format_line(const CriterionResult& r);

}  // namespace canonica::acceptance
