#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "dmn/errors.hpp"
#include "dmn/model.hpp"
#include "support.hpp"

using namespace dmn;
using test::json;

namespace {

json loan_doc() {
  std::ifstream in(test::fixture("loan_grade.json"));
  return json::parse(in);
}

json small_doc(const std::string& type, const std::string& facet, const std::string& entry) {
  return {{"name", "t"},
          {"hitPolicy", "U"},
          {"completeness", "I"},
          {"inputs", {{{"name", "x"}, {"type", type}, {"facet", facet}}}},
          {"outputs", {{{"name", "y"}, {"type", "string"}, {"facet", "VG,G,F,P"}}}},
          {"rules", {{{"id", "r1"}, {"in", {entry}}, {"out", {"G"}}}}}};
}

// Independent facet check: some probe value satisfies both facet and entry.
bool compatible_by_probe(const Condition& facet, const Condition& entry, const std::vector<Value>& probes) {
  for (const Value& v : probes) {
    if (satisfies(facet, v) && satisfies(entry, v)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("load the loan grading table") {
  const DecisionTable t = load_table_file(test::fixture("loan_grade.json"));
  CHECK(t.name == "Loan Grade");
  CHECK(t.inputs.size() == 2);
  CHECK(t.outputs.size() == 1);
  REQUIRE(t.rules.size() == 4);
  CHECK(t.rules[1].id == "B");
  CHECK(t.hit_policy == HitPolicy::Unique);
  CHECK(t.completeness == Completeness::Complete);
  CHECK(t.rules[0].priority == 4);
  CHECK(t.rules[3].priority == 1);
  CHECK(t.rules[1].outputs[0] == Value("G"));
}

TEST_CASE("load errors") {
  json dup = loan_doc();
  dup["rules"][1]["id"] = "A";
  CHECK_THROWS_AS(load_table(dup.dump()), SchemaError);

  try {
    (void)load_table(small_doc("string", "a,b", "[0..18]").dump());
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(e.rule_id() == "r1");
    CHECK(e.column() == "x");
  }

  json arity = loan_doc();
  arity["rules"][0]["in"].push_back("-");
  CHECK_THROWS_AS(load_table(arity.dump()), SchemaError);

  json shared = loan_doc();
  shared["outputs"][0]["name"] = "Loan Size";
  CHECK_THROWS_AS(load_table(shared.dump()), SchemaError);

  json partial = loan_doc();
  partial["rules"][0]["priority"] = 3;
  CHECK_THROWS_AS(load_table(partial.dump()), SchemaError);

  CHECK_THROWS_AS(load_table("{not json"), SchemaError);
  CHECK_THROWS_AS(load_table_file(test::fixture("absent.json")), SchemaError);

  json policy = loan_doc();
  policy["hitPolicy"] = "C";
  CHECK_THROWS_AS(load_table(policy.dump()), SchemaError);
}

TEST_CASE("priorities") {
  json doc = loan_doc();
  doc["hitPolicy"] = "P";
  const int ranks[] = {2, 4, 1, 3};
  for (int i = 0; i < 4; ++i) doc["rules"][i]["priority"] = ranks[i];
  const DecisionTable t = load_table(doc.dump());
  CHECK(t.explicit_priorities);
  CHECK(t.rules[1].priority == 4);
  CHECK(validate_structure(t).empty());

  doc["rules"][0]["priority"] = 4;
  const auto diags = validate_structure(load_table(doc.dump()));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == DiagCode::PriorityError);
}

TEST_CASE("validate_structure") {
  const DecisionTable t = load_table_file(test::fixture("loan_grade.json"));
  std::vector<Value> probes;
  for (const auto& rule : t.rules) {
    for (const auto& c : rule.inputs) {
      for (const Value& v : literals_of(c)) probes.push_back(v);
    }
  }
  for (const auto& rule : t.rules) {
    for (std::size_t c = 0; c < t.inputs.size(); ++c) {
      CHECK(compatible_by_probe(t.inputs[c].facet, rule.inputs[c], probes));
    }
  }
  CHECK(validate_structure(t).empty());

  const auto neg = validate_structure(load_table(small_doc("integer", ">= 0", "[-5..-1]").dump()));
  REQUIRE(neg.size() == 1);
  CHECK(neg[0].code == DiagCode::FacetIncompat);
  CHECK(neg[0].rules == std::vector<std::string>{"r1"});
  CHECK(neg[0].columns == std::vector<std::string>{"x"});

  json bad_out = small_doc("integer", ">= 0", "1");
  bad_out["rules"][0]["out"] = {"X"};
  const auto out = validate_structure(load_table(bad_out.dump()));
  REQUIRE(out.size() == 1);
  CHECK(out[0].code == DiagCode::FacetIncompat);
  CHECK(out[0].columns == std::vector<std::string>{"y"});
}

TEST_CASE("property: facet check agrees with probing") {
  test::TableMaker maker(21);
  for (int round = 0; round < 300; ++round) {
    const auto rt = maker.make({});
    const DecisionTable t = load_table(rt.doc.dump());
    const auto diags = validate_structure(t);
    for (const auto& rule : t.rules) {
      for (std::size_t c = 0; c < t.inputs.size(); ++c) {
        const bool flagged = std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) {
          return d.code == DiagCode::FacetIncompat && d.rules == std::vector<std::string>{rule.id} &&
                 d.columns == std::vector<std::string>{t.inputs[c].name};
        });
        CHECK(flagged == !compatible_by_probe(t.inputs[c].facet, rule.inputs[c], rt.samples[c]));
      }
    }
  }
}

TEST_CASE("property: save then load is the identity") {
  test::TableMaker maker(22);
  for (int round = 0; round < 300; ++round) {
    const DecisionTable t = load_table(maker.make({}, round % 2 ? "F" : "A").doc.dump());
    const DecisionTable back = load_table(save_table(t));
    CHECK(back == t);
  }
  json doc = loan_doc();
  doc["hitPolicy"] = "P";
  for (int i = 0; i < 4; ++i) doc["rules"][i]["priority"] = i + 1;
  const DecisionTable t = load_table(doc.dump());
  CHECK(load_table(save_table(t)) == t);
}

TEST_CASE("make_input") {
  const DecisionTable t = load_table_file(test::fixture("loan_grade.json"));
  const InputConfiguration in = make_input(t, {{"Annual Income", "500"}, {"Loan Size", "4230"}});
  CHECK(in.values == std::vector<Value>{Value(500.0), Value(4230.0)});
  CHECK_THROWS_AS(make_input(t, {{"Annual Income", "500"}}), SchemaError);
  CHECK_THROWS_AS(make_input(t, {{"Annual Income", "500"}, {"Loan Size", "1"}, {"Term", "3"}}), SchemaError);
  CHECK_THROWS_AS(make_input(t, {{"Annual Income", "high"}, {"Loan Size", "1"}}), TypeError);
}
