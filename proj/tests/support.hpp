#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmn/analysis.hpp"
#include "dmn/geometry.hpp"
#include "dmn/model.hpp"
#include "dmn/sfeel.hpp"

namespace test {

using json = nlohmann::json;

inline std::string fixture(const std::string& name) { return std::string(DMN_FIXTURES) + "/" + name; }

// A random table document plus, per input column, the values the brute-force
// oracle probes: every integer in [-1..11], every half step for reals, and the
// categories named by the document for strings.
struct RandomTable {
  json doc;
  std::vector<std::vector<dmn::Value>> samples;
};

struct RandomShape {
  std::size_t max_columns = 3;
  std::size_t max_rules = 8;
  std::size_t outputs = 1;
};

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

class TableMaker {
 public:
  explicit TableMaker(std::uint64_t seed) : rng_(seed) {}

  RandomTable make(const RandomShape& shape, const std::string& hit_policy = "U") {
    RandomTable out;
    const std::size_t cols = pick(1, shape.max_columns);
    const std::size_t rules = pick(0, shape.max_rules);
    std::vector<dmn::Kind> kinds;
    std::vector<std::set<std::string>> cats(cols);
    json inputs = json::array();
    for (std::size_t c = 0; c < cols; ++c) {
      const auto kind = static_cast<dmn::Kind>(pick(0, 3));
      kinds.push_back(kind);
      json attr = {{"name", "c" + std::to_string(c)}, {"type", std::string(dmn::kind_name(kind))}};
      if (auto facet = random_facet(kind, cats[c])) attr["facet"] = *facet;
      inputs.push_back(attr);
    }
    json rows = json::array();
    for (std::size_t r = 0; r < rules; ++r) {
      json in = json::array();
      for (std::size_t c = 0; c < cols; ++c) in.push_back(random_entry(kinds[c], cats[c]));
      json outs = json::array();
      for (std::size_t o = 0; o < shape.outputs; ++o) outs.push_back(pick(0, 1) ? "x" : "y");
      rows.push_back({{"id", "r" + std::to_string(r)}, {"in", in}, {"out", outs}});
    }
    json outputs = json::array();
    for (std::size_t o = 0; o < shape.outputs; ++o) {
      outputs.push_back({{"name", "o" + std::to_string(o)}, {"type", "string"}});
    }
    out.doc = {{"name", "random"},   {"hitPolicy", hit_policy}, {"completeness", pick(0, 1) ? "C" : "I"},
               {"inputs", inputs},   {"outputs", outputs},      {"rules", rows}};
    for (std::size_t c = 0; c < cols; ++c) out.samples.push_back(samples_for(kinds[c], cats[c]));
    return out;
  }

  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  std::mt19937_64& rng() { return rng_; }

  std::optional<std::string> random_facet(dmn::Kind kind, std::set<std::string>& cats) {
    switch (kind) {
      case dmn::Kind::Integer:
      case dmn::Kind::Real: {
        static const char* facets[] = {">= 0", "[0..10]", "[2..8]", "<= 9", "(1..9]"};
        const std::size_t k = pick(0, 5);
        if (k == 5) return std::nullopt;
        return facets[k];
      }
      case dmn::Kind::String: {
        if (pick(0, 1)) return std::nullopt;
        const std::size_t n = pick(1, 4);
        std::string text;
        for (std::size_t i = 0; i < n; ++i) {
          const std::string v(1, static_cast<char>('a' + i));
          cats.insert(v);
          text += (i ? "," : "") + quoted(v);
        }
        return text;
      }
      case dmn::Kind::Boolean:
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::string numeric_atom() {
    std::int64_t a = static_cast<std::int64_t>(pick(0, 10));
    std::int64_t b = static_cast<std::int64_t>(pick(0, 10));
    if (a > b) std::swap(a, b);
    const std::string sa = std::to_string(a);
    const std::string sb = std::to_string(b);
    switch (pick(0, 7)) {
      case 0: {
        if (a == b) return "[" + sa + ".." + sb + "]";
        const bool lo = pick(0, 1);
        const bool hi = pick(0, 1);
        const bool reversed = pick(0, 3) == 0;
        if (reversed) return std::string(lo ? "[" : "]") + sa + ".." + sb + (hi ? "]" : "[");
        return std::string(lo ? "[" : "(") + sa + ".." + sb + (hi ? "]" : ")");
      }
      case 1: return "< " + sa;
      case 2: return "<= " + sa;
      case 3: return "> " + sa;
      case 4: return ">= " + sa;
      case 5: return sa;
      case 6: return "not(" + sa + ")";
      default: return "[" + sa + ".." + sb + "]";
    }
  }

  std::string string_atom(std::set<std::string>& cats, bool allow_not) {
    const std::string v(1, static_cast<char>('a' + pick(0, 4)));
    cats.insert(v);
    if (allow_not && pick(0, 4) == 0) return "not(" + quoted(v) + ")";
    return quoted(v);
  }

  std::string random_entry(dmn::Kind kind, std::set<std::string>& cats) {
    if (pick(0, 4) == 0) return "-";
    switch (kind) {
      case dmn::Kind::Integer:
      case dmn::Kind::Real: {
        std::string text = numeric_atom();
        if (pick(0, 3) == 0 && text.rfind("not", 0) != 0) {
          std::string other = numeric_atom();
          if (other.rfind("not", 0) != 0) text += ", " + other;
        }
        return text;
      }
      case dmn::Kind::String: {
        std::string text = string_atom(cats, true);
        if (text.rfind("not", 0) == 0) return text;
        for (std::size_t extra = pick(0, 2); extra > 0; --extra) text += "," + string_atom(cats, false);
        return text;
      }
      case dmn::Kind::Boolean: {
        const std::size_t k = pick(0, 2);
        return k == 0 ? "true" : k == 1 ? "false" : "not(true)";
      }
    }
    return "-";
  }

  static std::vector<dmn::Value> samples_for(dmn::Kind kind, const std::set<std::string>& cats) {
    std::vector<dmn::Value> out;
    switch (kind) {
      case dmn::Kind::Integer:
        for (int i = -1; i <= 11; ++i) out.emplace_back(i);
        break;
      case dmn::Kind::Real:
        for (int i = -2; i <= 22; ++i) out.emplace_back(i / 2.0);
        break;
      case dmn::Kind::String:
        for (const auto& s : cats) out.emplace_back(s);
        break;
      case dmn::Kind::Boolean:
        out.emplace_back(false);
        out.emplace_back(true);
        break;
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

// Rule indices whose entries all hold at `point`, by the condition formulas
// alone. Illegal points trigger nothing.
inline std::vector<std::size_t> triggered_at(const dmn::DecisionTable& t, const std::vector<dmn::Value>& point) {
  for (std::size_t c = 0; c < t.inputs.size(); ++c) {
    if (!dmn::satisfies(t.inputs[c].facet, point[c])) return {};
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < t.rules.size(); ++r) {
    bool all = true;
    for (std::size_t c = 0; c < t.inputs.size() && all; ++c) all = dmn::satisfies(t.rules[r].inputs[c], point[c]);
    if (all) out.push_back(r);
  }
  return out;
}

inline bool legal(const dmn::DecisionTable& t, const std::vector<dmn::Value>& point) {
  for (std::size_t c = 0; c < t.inputs.size(); ++c) {
    if (!dmn::satisfies(t.inputs[c].facet, point[c])) return false;
  }
  return true;
}

// Calls `fn` on every point of the cross product of `samples`.
inline void for_each_point(const std::vector<std::vector<dmn::Value>>& samples,
                           const std::function<void(const std::vector<dmn::Value>&)>& fn) {
  for (const auto& s : samples) {
    if (s.empty()) return;
  }
  std::vector<std::size_t> idx(samples.size(), 0);
  std::vector<dmn::Value> point(samples.size());
  while (true) {
    for (std::size_t d = 0; d < samples.size(); ++d) point[d] = samples[d][idx[d]];
    fn(point);
    std::size_t d = 0;
    while (d < samples.size() && ++idx[d] == samples[d].size()) idx[d++] = 0;
    if (d == samples.size()) return;
  }
}

// Maximal sets of size >= 2 among `sets`.
inline std::set<std::vector<std::size_t>> maximal(const std::set<std::vector<std::size_t>>& sets) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& s : sets) {
    if (s.size() < 2) continue;
    bool covered = false;
    for (const auto& t : sets) {
      if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        covered = true;
        break;
      }
    }
    if (!covered) out.insert(s);
  }
  return out;
}

inline std::vector<dmn::Coord> encode(const dmn::CategoryCodec& codec, const std::vector<dmn::Value>& point) {
  return dmn::encode_input(dmn::InputConfiguration{point}, codec);
}

using Family = std::set<std::vector<std::size_t>>;

inline Family family_of(const std::vector<dmn::OverlapGroup>& groups) {
  Family out;
  for (const auto& g : groups) out.insert(g.rules);
  return out;
}

inline bool box_within(const dmn::HyperRect& inner, const dmn::HyperRect& outer, const std::vector<dmn::Axis>& axes) {
  return dmn::intersect_rects(inner, outer, axes) == inner;
}

// Grid cells that some missing region meets; `split` is set when a region
// covers only part of a cell.
inline std::set<std::vector<std::size_t>> covered_cells(const dmn::CompressedGrid& grid,
                                                        const std::vector<dmn::MissingRegion>& regions,
                                                        const std::vector<dmn::Axis>& axes, bool& split) {
  std::set<std::vector<std::size_t>> covered;
  std::vector<std::size_t> cell(grid.axes.size(), 0);
  const std::size_t total = grid.cell_count();
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rest = n;
    for (std::size_t d = 0; d < cell.size(); ++d) {
      cell[d] = rest % grid.axes[d].size();
      rest /= grid.axes[d].size();
    }
    const dmn::HyperRect box = grid.box(cell);
    for (const auto& m : regions) {
      if (!dmn::intersect_rects(box, m.box, axes)) continue;
      if (!box_within(box, m.box, axes)) split = true;
      covered.insert(cell);
    }
  }
  return covered;
}

// Every way the sweeps disagree with the brute-force oracles on one table:
// the library's compressed-grid oracles, and point probing of the condition
// formulas. Empty when they all agree.
inline std::vector<std::string> oracle_mismatches(const RandomTable& rt) {
  std::vector<std::string> out;
  const dmn::DecisionTable t = dmn::load_table(rt.doc.dump());
  const dmn::TableGeometry g = dmn::build_geometry(t);
  const auto groups = dmn::find_overlapping_rules(g);
  const auto regions = dmn::find_missing_rules(g);
  const Family found = family_of(groups);

  if (found != family_of(dmn::oracle_overlaps(t))) out.push_back("overlap family differs from the grid oracle");

  Family probed;
  bool probe_gap_mismatch = false;
  for_each_point(rt.samples, [&](const std::vector<dmn::Value>& point) {
    if (!legal(t, point)) return;
    const auto fired = triggered_at(t, point);
    probed.insert(fired);
    const auto x = encode(g.codec, point);
    const bool in_region = std::any_of(regions.begin(), regions.end(), [&](const dmn::MissingRegion& m) {
      return m.box.contains(x);
    });
    if (in_region != fired.empty()) probe_gap_mismatch = true;
  });
  if (found != maximal(probed)) out.push_back("overlap family differs from point probing");
  if (probe_gap_mismatch) out.push_back("missing regions differ from point probing");

  for (const auto& a : groups) {
    for (const auto& b : groups) {
      if (&a != &b && std::includes(b.rules.begin(), b.rules.end(), a.rules.begin(), a.rules.end())) {
        out.push_back("overlap groups are not an antichain");
      }
    }
    for (std::size_t r : a.rules) {
      const bool inside = std::any_of(g.rule_rects[r].begin(), g.rule_rects[r].end(),
                                      [&](std::size_t k) { return box_within(a.witness, g.rects[k], g.axes); });
      if (!inside) out.push_back("witness outside a member rule");
    }
  }

  const dmn::MissingCells cells = dmn::oracle_missing(t);
  std::set<std::vector<std::size_t>> expected(cells.cells.begin(), cells.cells.end());
  bool split = false;
  const auto covered = covered_cells(cells.grid, regions, g.axes, split);
  if (split) out.push_back("missing region splits a grid cell");
  if (covered != expected) out.push_back("missing cells differ from the grid oracle");

  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (dmn::intersect_rects(regions[i].box, regions[j].box, g.axes)) out.push_back("missing regions overlap");
    }
    for (const auto& r : g.rects) {
      if (dmn::intersect_rects(regions[i].box, r, g.axes)) out.push_back("missing region meets a rule");
    }
    if (regions[i].rendered.size() != t.inputs.size()) out.push_back("missing region rendered with wrong arity");
  }
  return out;
}

}  // namespace test
