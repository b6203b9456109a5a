#include "dmn/model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dmn/errors.hpp"
#include "dmn/geometry.hpp"

namespace dmn {

using nlohmann::json;

std::string_view code_name(DiagCode code) {
  switch (code) {
    case DiagCode::FacetIncompat: return "FACET_INCOMPAT";
    case DiagCode::Overlap: return "OVERLAP";
    case DiagCode::OutputDisagreement: return "OUTPUT_DISAGREEMENT";
    case DiagCode::MaskedRule: return "MASKED_RULE";
    case DiagCode::MissingRule: return "MISSING_RULE";
    case DiagCode::CompletenessMismatch: return "COMPLETENESS_MISMATCH";
    case DiagCode::PriorityError: return "PRIORITY_ERROR";
  }
  return "?";
}

std::string_view severity_name(Severity s) { return s == Severity::Error ? "error" : "warning"; }

char hit_policy_letter(HitPolicy h) {
  switch (h) {
    case HitPolicy::Unique: return 'U';
    case HitPolicy::Any: return 'A';
    case HitPolicy::Priority: return 'P';
    case HitPolicy::First: return 'F';
  }
  return '?';
}

char completeness_letter(Completeness c) { return c == Completeness::Complete ? 'C' : 'I'; }

std::optional<std::size_t> DecisionTable::input_index(std::string_view n) const {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].name == n) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> DecisionTable::rule_index(std::string_view id) const {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].id == id) return i;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void schema(const std::string& msg) { throw SchemaError("schema: " + msg); }

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + " is missing '" + key + "'");
  return *it;
}

std::string text_of(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_float() || j.is_boolean()) return j.dump();
  schema(where + " must be a string");
}

// Re-raises S-FEEL errors with their table location.
template <typename F>
auto located(const std::string& rule, const std::string& column, F&& f) -> decltype(f()) {
  const auto prefix = [&] {
    std::string p;
    if (!rule.empty()) p += "rule " + rule;
    if (!column.empty()) p += (p.empty() ? "column " : ", column ") + column;
    return p + ": ";
  };
  try {
    return f();
  } catch (const SyntaxError& e) {
    throw SyntaxError(prefix() + e.what(), rule, column);
  } catch (const TypeError& e) {
    throw TypeError(prefix() + e.what(), rule, column);
  } catch (const EvalError& e) {
    throw EvalError(prefix() + e.what(), rule, column);
  }
}

Attribute load_attribute(const json& j, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  Attribute a;
  a.name = text_of(field(j, "name", where), where + ".name");
  if (a.name.empty()) schema(where + " has an empty name");
  const std::string type = text_of(field(j, "type", where), where + ".type");
  auto kind = parse_kind(type);
  if (!kind) schema(where + " has unknown type '" + type + "'");
  a.kind = *kind;
  a.facet = Condition{a.kind, AnyValue{}};
  if (auto it = j.find("facet"); it != j.end() && !it->is_null()) {
    const std::string text = text_of(*it, where + ".facet");
    a.facet = located("", a.name, [&] { return parse_condition(text, a.kind); });
  }
  return a;
}

}  // namespace

DecisionTable load_table(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    schema(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("document must be an object");

  DecisionTable t;
  if (auto it = doc.find("name"); it != doc.end()) t.name = text_of(*it, "name");

  const std::string hit = doc.contains("hitPolicy") ? text_of(doc["hitPolicy"], "hitPolicy") : "U";
  if (hit == "U") {
    t.hit_policy = HitPolicy::Unique;
  } else if (hit == "A") {
    t.hit_policy = HitPolicy::Any;
  } else if (hit == "P") {
    t.hit_policy = HitPolicy::Priority;
  } else if (hit == "F") {
    t.hit_policy = HitPolicy::First;
  } else {
    schema("hitPolicy must be one of U, A, P, F (got '" + hit + "')");
  }

  const std::string comp = doc.contains("completeness") ? text_of(doc["completeness"], "completeness") : "C";
  if (comp == "C") {
    t.completeness = Completeness::Complete;
  } else if (comp == "I") {
    t.completeness = Completeness::Incomplete;
  } else {
    schema("completeness must be C or I (got '" + comp + "')");
  }

  const json& inputs = field(doc, "inputs", "document");
  const json& outputs = field(doc, "outputs", "document");
  if (!inputs.is_array() || !outputs.is_array()) schema("inputs and outputs must be lists");
  if (inputs.empty()) schema("a table needs at least one input column");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    t.inputs.push_back(load_attribute(inputs[i], "inputs[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    t.outputs.push_back(load_attribute(outputs[i], "outputs[" + std::to_string(i) + "]"));
  }
  std::set<std::string> names;
  for (const auto* list : {&t.inputs, &t.outputs}) {
    for (const auto& a : *list) {
      if (!names.insert(a.name).second) schema("attribute name '" + a.name + "' is used twice");
    }
  }

  const json& rules = field(doc, "rules", "document");
  if (!rules.is_array()) schema("rules must be a list");
  std::set<std::string> ids;
  std::size_t with_priority = 0;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const json& jr = rules[k];
    const std::string where = "rules[" + std::to_string(k) + "]";
    if (!jr.is_object()) schema(where + " must be an object");
    Rule r;
    r.id = text_of(field(jr, "id", where), where + ".id");
    if (r.id.empty()) schema(where + " has an empty id");
    if (!ids.insert(r.id).second) schema("duplicate rule id '" + r.id + "'");

    const json& in = field(jr, "in", where);
    const json& out = field(jr, "out", where);
    if (!in.is_array() || in.size() != t.inputs.size()) {
      schema("rule " + r.id + " must have " + std::to_string(t.inputs.size()) + " input entries");
    }
    if (!out.is_array() || out.size() != t.outputs.size()) {
      schema("rule " + r.id + " must have " + std::to_string(t.outputs.size()) + " output entries");
    }
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Attribute& a = t.inputs[i];
      const std::string text = text_of(in[i], where + ".in");
      r.inputs.push_back(located(r.id, a.name, [&] { return parse_condition(text, a.kind); }));
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
      const Attribute& a = t.outputs[j];
      const std::string text = text_of(out[j], where + ".out");
      r.outputs.push_back(located(r.id, a.name, [&] { return parse_literal(text, a.kind); }));
    }
    if (auto it = jr.find("priority"); it != jr.end() && !it->is_null()) {
      if (!it->is_number_integer()) schema("rule " + r.id + " priority must be an integer");
      r.priority = it->get<int>();
      ++with_priority;
    }
    t.rules.push_back(std::move(r));
  }

  if (with_priority != 0 && with_priority != t.rules.size()) {
    schema("priorities must be given for every rule or for none");
  }
  t.explicit_priorities = with_priority != 0;
  if (!t.explicit_priorities) {
    for (std::size_t k = 0; k < t.rules.size(); ++k) t.rules[k].priority = row_rank(k, t.rules.size());
  }
  return t;
}

DecisionTable load_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_table(ss.str());
}

std::string save_table(const DecisionTable& table) {
  const auto attrs = [](const std::vector<Attribute>& list) {
    json out = json::array();
    for (const auto& a : list) {
      json j = {{"name", a.name}, {"type", std::string(kind_name(a.kind))}};
      if (!a.facet.is_any()) j["facet"] = render(a.facet);
      out.push_back(std::move(j));
    }
    return out;
  };

  json doc;
  doc["name"] = table.name;
  doc["hitPolicy"] = std::string(1, hit_policy_letter(table.hit_policy));
  doc["completeness"] = std::string(1, completeness_letter(table.completeness));
  doc["inputs"] = attrs(table.inputs);
  doc["outputs"] = attrs(table.outputs);
  json rules = json::array();
  for (const auto& r : table.rules) {
    json jr;
    jr["id"] = r.id;
    if (table.explicit_priorities) jr["priority"] = r.priority;
    json in = json::array();
    for (const auto& c : r.inputs) in.push_back(render(c));
    json out = json::array();
    for (const auto& v : r.outputs) out.push_back(render_value(v));
    jr["in"] = std::move(in);
    jr["out"] = std::move(out);
    rules.push_back(std::move(jr));
  }
  doc["rules"] = std::move(rules);
  return doc.dump(2) + "\n";
}

InputConfiguration make_input(const DecisionTable& table, const std::map<std::string, std::string>& assignments) {
  for (const auto& [name, _] : assignments) {
    if (!table.input_index(name)) throw SchemaError("unknown input attribute '" + name + "'");
  }
  InputConfiguration cfg;
  for (const auto& a : table.inputs) {
    auto it = assignments.find(a.name);
    if (it == assignments.end()) throw SchemaError("no value given for input attribute '" + a.name + "'");
    cfg.values.push_back(located("", a.name, [&] { return parse_literal(it->second, a.kind); }));
  }
  return cfg;
}

std::vector<Diagnostic> validate_structure(const DecisionTable& table) {
  std::vector<Diagnostic> out;
  const CategoryCodec codec = build_codec(table);

  std::vector<IntervalSet> facets;
  for (std::size_t i = 0; i < table.inputs.size(); ++i) {
    facets.push_back(lower_to_intervals(table.inputs[i].facet, codec.column(i)));
  }

  for (const auto& r : table.rules) {
    for (std::size_t i = 0; i < table.inputs.size(); ++i) {
      const IntervalSet entry = lower_to_intervals(r.inputs[i], codec.column(i));
      if (entry.intersect(facets[i]).empty()) {
        out.push_back({Severity::Error, DiagCode::FacetIncompat, {r.id}, {table.inputs[i].name},
                       "input entry '" + render(r.inputs[i]) + "' admits no value of facet '" +
                           render(table.inputs[i].facet) + "'",
                       {}});
      }
    }
    for (std::size_t j = 0; j < table.outputs.size(); ++j) {
      if (!satisfies(table.outputs[j].facet, r.outputs[j])) {
        out.push_back({Severity::Error, DiagCode::FacetIncompat, {r.id}, {table.outputs[j].name},
                       "output entry '" + render_value(r.outputs[j]) + "' is outside facet '" +
                           render(table.outputs[j].facet) + "'",
                       {}});
      }
    }
  }

  const int n = static_cast<int>(table.rules.size());
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& r : table.rules) {
    if (r.priority >= 1 && r.priority <= n) ++seen[static_cast<std::size_t>(r.priority)];
  }
  Diagnostic bad{Severity::Error, DiagCode::PriorityError, {}, {}, "", {}};
  for (const auto& r : table.rules) {
    if (r.priority < 1 || r.priority > n || seen[static_cast<std::size_t>(r.priority)] > 1) bad.rules.push_back(r.id);
  }
  if (!bad.rules.empty()) {
    bad.message = "priorities must map the rules one-to-one onto 1.." + std::to_string(n);
    out.push_back(std::move(bad));
  }
  return out;
}

}  // namespace dmn
