#pragma once

#include <cstdint>
#include <vector>

#include "dmn/analysis.hpp"
#include "dmn/diagnostic.hpp"
#include "dmn/model.hpp"

namespace dmn {

// Which analyses check_correct runs. Structural checks always run.
enum class CheckScope : std::uint8_t { All, Overlap, Missing };

struct CompletenessVerdict {
  Completeness declared = Completeness::Complete;
  bool actual = true;                  // no input of the universe is left uncovered
  std::vector<MissingRegion> missing;
};

struct CorrectnessReport {
  std::vector<Diagnostic> facet_diagnostics;  // facet and priority problems
  CompletenessVerdict completeness;
  std::vector<OverlapGroup> overlaps;
  std::vector<Diagnostic> hit_policy_diagnostics;
  bool correct = true;

  // Every finding above, sorted by code, first rule (table order), first column.
  std::vector<Diagnostic> diagnostics;
};

// Facets hold, the completeness indicator is truthful, and the hit policy is
// honoured: no overlap under U, agreeing outputs under A, no masked rule
// under P and F.
CorrectnessReport check_correct(const DecisionTable& table, CheckScope scope = CheckScope::All);

}  // namespace dmn
