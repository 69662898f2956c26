#pragma once

// Regression table of the worked examples, run by `spai verify`.

#include <string>
#include <vector>

namespace spai {

struct SuiteEntry {
  std::string name;
  bool passed = false;
  std::string detail;  // expected vs actual, or the error text
};

std::vector<SuiteEntry> run_example_suite();

}  // namespace spai
