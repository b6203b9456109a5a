#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmn/diagnostic.hpp"
#include "dmn/sfeel.hpp"
#include "dmn/value.hpp"

namespace dmn {

enum class HitPolicy : std::uint8_t { Unique, Any, Priority, First };
enum class Completeness : std::uint8_t { Complete, Incomplete };

char hit_policy_letter(HitPolicy h);
char completeness_letter(Completeness c);

struct Attribute {
  std::string name;
  Kind kind = Kind::Integer;
  Condition facet;  // AnyValue when the column declares no facet

  bool operator==(const Attribute&) const = default;
};

struct Rule {
  std::string id;
  std::vector<Condition> inputs;  // one per input attribute
  std::vector<Value> outputs;     // one per output attribute
  int priority = 0;               // larger rank = higher priority

  bool operator==(const Rule&) const = default;
};

struct DecisionTable {
  std::string name;
  std::vector<Attribute> inputs;
  std::vector<Attribute> outputs;
  std::vector<Rule> rules;
  HitPolicy hit_policy = HitPolicy::Unique;
  Completeness completeness = Completeness::Complete;
  // Ranks came from the document rather than from row order.
  bool explicit_priorities = false;

  std::optional<std::size_t> input_index(std::string_view name) const;
  std::optional<std::size_t> rule_index(std::string_view id) const;

  bool operator==(const DecisionTable&) const = default;
};

// One object per input attribute, in table order.
struct InputConfiguration {
  std::vector<Value> values;
};

struct OutputConfiguration {
  std::vector<Value> values;
  bool operator==(const OutputConfiguration&) const = default;
};

// Rank of row k (0-based) among p rows when priorities follow display order:
// the first row gets rank p.
inline int row_rank(std::size_t row, std::size_t rows) { return static_cast<int>(rows - row); }

// Parses the JSON interchange document. Cell errors are rethrown with the
// rule id and column attached.
DecisionTable load_table(std::string_view document);
DecisionTable load_table_file(const std::string& path);

// Inverse of load_table: a document that loads back to an equal table.
std::string save_table(const DecisionTable& table);

// Builds an input configuration from "name=value" pairs, parsing each value
// with the column's kind.
InputConfiguration make_input(const DecisionTable& table, const std::map<std::string, std::string>& assignments);

// Facet compatibility of every cell and well-formedness of the priority map.
std::vector<Diagnostic> validate_structure(const DecisionTable& table);

}  // namespace dmn
