#include "dmn/correctness.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

#include "dmn/geometry.hpp"
#include "dmn/semantics.hpp"

namespace dmn {

namespace {

std::vector<std::string> input_names(const DecisionTable& t) {
  std::vector<std::string> out;
  for (const auto& a : t.inputs) out.push_back(a.name);
  return out;
}

std::vector<std::string> rule_ids(const DecisionTable& t, const std::vector<std::size_t>& rules) {
  std::vector<std::string> out;
  for (std::size_t r : rules) out.push_back(t.rules[r].id);
  return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diags, const DecisionTable& t) {
  const auto rank_of = [](const std::vector<std::string>& names, const std::vector<std::string>& order) {
    if (names.empty()) return std::size_t{0};
    auto it = std::find(order.begin(), order.end(), names.front());
    return static_cast<std::size_t>(it - order.begin()) + 1;
  };
  std::vector<std::string> rule_order;
  for (const auto& r : t.rules) rule_order.push_back(r.id);
  std::vector<std::string> column_order = input_names(t);
  for (const auto& a : t.outputs) column_order.push_back(a.name);

  std::stable_sort(diags.begin(), diags.end(), [&](const Diagnostic& a, const Diagnostic& b) {
    const auto ka = std::tuple(a.code, rank_of(a.rules, rule_order), rank_of(a.columns, column_order));
    const auto kb = std::tuple(b.code, rank_of(b.rules, rule_order), rank_of(b.columns, column_order));
    return ka < kb;
  });
}

std::vector<Diagnostic> hit_policy_findings(const DecisionTable& t, const TableGeometry& g,
                                            const std::vector<OverlapGroup>& groups) {
  std::vector<Diagnostic> out;
  switch (t.hit_policy) {
    case HitPolicy::Unique:
      for (const auto& grp : groups) {
        out.push_back({Severity::Error, DiagCode::Overlap, rule_ids(t, grp.rules), input_names(t),
                       "rules can be triggered by the same input", render_box(grp.witness, g.codec)});
      }
      break;
    case HitPolicy::Any:
      for (const auto& grp : groups) {
        std::vector<std::string> columns;
        for (std::size_t j = 0; j < t.outputs.size(); ++j) {
          const Value& first = t.rules[grp.rules.front()].outputs[j];
          const bool same = std::all_of(grp.rules.begin(), grp.rules.end(),
                                        [&](std::size_t r) { return t.rules[r].outputs[j] == first; });
          if (!same) columns.push_back(t.outputs[j].name);
        }
        if (columns.empty()) continue;
        out.push_back({Severity::Error, DiagCode::OutputDisagreement, rule_ids(t, grp.rules), std::move(columns),
                       "overlapping rules disagree on the output", render_box(grp.witness, g.codec)});
      }
      break;
    case HitPolicy::Priority:
    case HitPolicy::First: {
      // A masked rule overlaps its masking rule, so candidates come from the groups.
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& grp : groups) {
        for (std::size_t a : grp.rules) {
          for (std::size_t b : grp.rules) {
            if (a != b) pairs.emplace(a, b);
          }
        }
      }
      for (const auto& [masked, by] : pairs) {
        if (!masked_by(masked, by, t, g)) continue;
        out.push_back({Severity::Error, DiagCode::MaskedRule, {t.rules[masked].id, t.rules[by].id}, input_names(t),
                       "rule " + t.rules[masked].id + " is masked by higher-priority rule " + t.rules[by].id,
                       {}});
      }
      break;
    }
  }
  return out;
}

}  // namespace

CorrectnessReport check_correct(const DecisionTable& table, CheckScope scope) {
  CorrectnessReport rep;
  rep.facet_diagnostics = validate_structure(table);
  rep.completeness.declared = table.completeness;
  const TableGeometry g = build_geometry(table);

  std::vector<Diagnostic> completeness_diags;
  if (scope != CheckScope::Overlap) {
    rep.completeness.missing = find_missing_rules(g);
    rep.completeness.actual = rep.completeness.missing.empty();
    const bool claimed = table.completeness == Completeness::Complete;
    for (const auto& m : rep.completeness.missing) {
      completeness_diags.push_back({claimed ? Severity::Error : Severity::Warning, DiagCode::MissingRule, {},
                                    input_names(table), "no rule covers this region", m.rendered});
    }
    if (claimed != rep.completeness.actual) {
      completeness_diags.push_back({Severity::Error, DiagCode::CompletenessMismatch, {}, input_names(table),
                                    claimed ? "table is declared complete but some inputs match no rule"
                                            : "table is declared incomplete but every input matches a rule",
                                    {}});
    }
  }
  if (scope != CheckScope::Missing) {
    rep.overlaps = find_overlapping_rules(g);
    rep.hit_policy_diagnostics = hit_policy_findings(table, g, rep.overlaps);
  }

  const bool completeness_ok =
      scope == CheckScope::Overlap || (table.completeness == Completeness::Complete) == rep.completeness.actual;
  rep.correct = rep.facet_diagnostics.empty() && completeness_ok && rep.hit_policy_diagnostics.empty();

  rep.diagnostics = rep.facet_diagnostics;
  rep.diagnostics.insert(rep.diagnostics.end(), completeness_diags.begin(), completeness_diags.end());
  rep.diagnostics.insert(rep.diagnostics.end(), rep.hit_policy_diagnostics.begin(), rep.hit_policy_diagnostics.end());
  sort_diagnostics(rep.diagnostics, table);
  return rep;
}

}  // namespace dmn
