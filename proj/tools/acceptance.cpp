// Runs acceptance criteria 1-11 and prints one line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "loewy/acceptance.hpp"

int main(int argc, char** argv) {
  loewy::AcceptanceOptions opts;
  opts.verbose = false;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  bool all = true;
  for (const auto& c : loewy::run_acceptance(opts)) {
    std::cout << c.line() << std::endl;
    for (const auto& n : c.notes) std::cout << "  note: " << n << '\n';
    all = all && c.report.passed;
  }
  std::cout << (all ? "acceptance: PASS" : "acceptance: FAIL") << std::endl;
  return all ? 0 : 1;
}
