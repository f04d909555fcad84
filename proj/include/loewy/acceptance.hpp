#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loewy/algebra.hpp"
#include "loewy/basis.hpp"

namespace loewy {

/// The field x level x width grid shared by the sampled suites.
std::vector<AlgebraDescriptor> acceptance_grid();

/// Smallest budget whose enumeration reaches `target` indices (or the whole
/// basis, when the basis is finite and smaller).
BasisBudget budget_for(const AlgebraDescriptor& desc, std::uint64_t target);

struct CriterionResult {
  int id = 0;
  std::string title;
  CheckReport report;
  double seconds = 0;
  std::vector<std::string> notes;

  std::string line() const;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  /// Criteria to run; empty means 1..11.
  std::vector<int> only;
  /// Progress lines to stderr.
  bool verbose = false;
};

/// Runs one criterion. Criterion 11 includes the outcome of 1..10 only when
/// given their results.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts, const std::vector<CriterionResult>& earlier = {});

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

}  // namespace loewy
