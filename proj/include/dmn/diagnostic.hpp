#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dmn {

enum class Severity : std::uint8_t { Error, Warning };

// Declaration order is the report sort order.
enum class DiagCode : std::uint8_t {
  FacetIncompat,
  Overlap,
  OutputDisagreement,
  MaskedRule,
  MissingRule,
  CompletenessMismatch,
  PriorityError,
};

std::string_view code_name(DiagCode code);
std::string_view severity_name(Severity s);

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagCode code = DiagCode::FacetIncompat;
  std::vector<std::string> rules;     // rule ids, table order; MASKED_RULE lists the masked rule first
  std::vector<std::string> columns;   // column names, table order
  std::string message;
  std::vector<std::string> detail;    // S-FEEL text, one per input column when a region is involved

  bool operator==(const Diagnostic&) const = default;
};

}  // namespace dmn
