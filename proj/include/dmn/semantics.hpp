#pragma once

#include <string>
#include <vector>

#include "dmn/model.hpp"

namespace dmn {

struct EvalResult {
  enum class Outcome { Matched, NoMatch, PolicyViolation };

  Outcome outcome = Outcome::NoMatch;
  OutputConfiguration output;             // set when Matched
  std::size_t fired = 0;                  // rule index, set when Matched
  std::vector<std::size_t> violating;     // rule indices, set on PolicyViolation
  std::vector<std::size_t> triggered;     // every triggered rule, table order
};

// Legal for the attribute (facet holds) and the condition holds.
bool matches_value(const Attribute& attr, const Condition& cond, const Value& value);

bool triggered_by(const Rule& rule, const DecisionTable& table, const InputConfiguration& input);

// The table-level input/output relation under the table's hit policy.
EvalResult evaluate(const DecisionTable& table, const InputConfiguration& input);

// r1 is masked by r2: r2 has strictly higher priority and triggers on every
// input that triggers r1. Indices refer to table.rules.
bool masked_by(std::size_t r1, std::size_t r2, const DecisionTable& table);

struct TableGeometry;
// Same test over geometry already lowered by build_geometry(table).
bool masked_by(std::size_t r1, std::size_t r2, const DecisionTable& table, const TableGeometry& geometry);

}  // namespace dmn
