#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bergman/report.hpp"

namespace bergman {

struct AcceptanceCriterion {
  int id;
  std::string check_id;  // prefix of every entry the criterion emits
  std::string title;
  std::vector<std::string> domains;  // presets the criterion exercises
};

const std::vector<AcceptanceCriterion>& acceptance_criteria();

struct SuiteConfig {
  /// Preset name; empty runs every domain.
  std::string domain;
  std::uint64_t seed = 1;
  double abs_tol = 1e-8;
  std::size_t max_cells = QuadConfig{}.max_cells;
};

/// Entries of one criterion, restricted to `cfg.domain` when set. Numerical
/// errors inside a check become failing entries rather than exceptions.
std::vector<CheckEntry> run_criterion(int id, const SuiteConfig& cfg);

/// Criteria whose domain list contains `cfg.domain` (all when empty).
std::vector<int> selected_criteria(const SuiteConfig& cfg);

}  // namespace bergman
