#include "dmn/semantics.hpp"

#include <algorithm>
#include <limits>

#include "dmn/errors.hpp"
#include "dmn/geometry.hpp"

namespace dmn {

bool matches_value(const Attribute& attr, const Condition& cond, const Value& value) {
  return satisfies(attr.facet, value) && satisfies(cond, value);
}

bool triggered_by(const Rule& rule, const DecisionTable& table, const InputConfiguration& input) {
  if (input.values.size() != table.inputs.size()) throw TypeError("input configuration has the wrong arity");
  for (std::size_t i = 0; i < table.inputs.size(); ++i) {
    if (!matches_value(table.inputs[i], rule.inputs[i], input.values[i])) return false;
  }
  return true;
}

EvalResult evaluate(const DecisionTable& table, const InputConfiguration& input) {
  EvalResult res;
  for (std::size_t k = 0; k < table.rules.size(); ++k) {
    if (triggered_by(table.rules[k], table, input)) res.triggered.push_back(k);
  }
  if (res.triggered.empty()) return res;

  const auto matched = [&](std::size_t k) {
    res.outcome = EvalResult::Outcome::Matched;
    res.fired = k;
    res.output.values = table.rules[k].outputs;
    return res;
  };
  const auto violation = [&](std::vector<std::size_t> rules) {
    res.outcome = EvalResult::Outcome::PolicyViolation;
    res.violating = std::move(rules);
    return res;
  };

  switch (table.hit_policy) {
    case HitPolicy::Unique:
      if (res.triggered.size() == 1) return matched(res.triggered.front());
      return violation(res.triggered);
    case HitPolicy::Any: {
      const auto& first = table.rules[res.triggered.front()].outputs;
      for (std::size_t k : res.triggered) {
        if (table.rules[k].outputs != first) return violation(res.triggered);
      }
      return matched(res.triggered.front());
    }
    case HitPolicy::Priority:
    case HitPolicy::First: {
      int best = std::numeric_limits<int>::min();
      std::vector<std::size_t> top;
      for (std::size_t k : res.triggered) {
        const int p = table.rules[k].priority;
        if (p > best) {
          best = p;
          top.clear();
        }
        if (p == best) top.push_back(k);
      }
      // Ties only arise from a malformed priority map.
      if (top.size() > 1) return violation(top);
      return matched(top.front());
    }
  }
  return res;
}

namespace {

// Does the union of `cover` contain every point of `box`? Decided on the
// grid induced by the endpoints of `box` and of the covering boxes.
bool box_covered(const HyperRect& box, const std::vector<const HyperRect*>& cover, std::span<const Axis> axes) {
  const std::size_t n = box.size();
  std::vector<std::vector<GridCell>> cells(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<Coord> cuts;
    collect_cuts(box.dims[d], cuts);
    for (const auto* c : cover) collect_cuts(c->dims[d], cuts);
    for (auto& cell : compress_axis(std::move(cuts), axes[d])) {
      if (box.dims[d].contains(cell.sample)) cells[d].push_back(std::move(cell));
    }
    if (cells[d].empty()) return true;
  }

  std::vector<std::size_t> idx(n, 0);
  std::vector<Coord> point(n);
  while (true) {
    for (std::size_t d = 0; d < n; ++d) point[d] = cells[d][idx[d]].sample;
    const bool hit = std::any_of(cover.begin(), cover.end(), [&](const HyperRect* c) { return c->contains(point); });
    if (!hit) return false;
    std::size_t d = 0;
    while (d < n && ++idx[d] == cells[d].size()) idx[d++] = 0;
    if (d == n) return true;
  }
}

}  // namespace

bool masked_by(std::size_t r1, std::size_t r2, const DecisionTable& table, const TableGeometry& g) {
  if (table.rules.at(r2).priority <= table.rules.at(r1).priority) return false;
  const std::size_t n = g.dimensions();

  std::vector<const HyperRect*> cover;
  for (std::size_t i : g.rule_rects.at(r2)) cover.push_back(&g.rects[i]);

  for (std::size_t i : g.rule_rects.at(r1)) {
    const HyperRect& box = g.rects[i];
    std::vector<const HyperRect*> relevant;
    for (const auto* c : cover) {
      if (intersect_rects(box, *c, g.axes)) relevant.push_back(c);
    }
    if (relevant.empty()) return false;
    // Cheap rejection: some coordinate of the box lies outside every cover.
    for (std::size_t d = 0; d < n; ++d) {
      IntervalSet span(g.axes[d]);
      for (const auto* c : relevant) span = span.unite(IntervalSet(g.axes[d], {c->dims[d]}));
      if (IntervalSet(g.axes[d], {box.dims[d]}).intersect(span.complement()).size() != 0) return false;
    }
    if (!box_covered(box, relevant, g.axes)) return false;
  }
  return true;
}

bool masked_by(std::size_t r1, std::size_t r2, const DecisionTable& table) {
  return masked_by(r1, r2, table, build_geometry(table));
}

}  // namespace dmn
