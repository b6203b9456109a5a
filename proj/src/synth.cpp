#include "dmn/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dmn/analysis.hpp"
#include "dmn/errors.hpp"
#include "dmn/geometry.hpp"

namespace dmn {

using json = nlohmann::json;

namespace {

const char* const kGrades[] = {"A", "B", "C", "D", "E", "F", "G"};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string category_name(std::size_t column, std::size_t k) {
  return "x" + std::to_string(column + 1) + "_v" + std::to_string(k);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

std::vector<ColumnSpec> standard_columns(std::size_t count) {
  if (count == 0) throw SpecError("a table needs at least one column");
  std::size_t categorical = 1;
  if (count == 5 || count == 7) categorical = 2;
  if (count == 1) categorical = 0;
  std::vector<ColumnSpec> out(count);
  for (std::size_t i = 0; i < categorical; ++i) out[i].categorical = true;
  return out;
}

std::vector<ColumnSpec> parse_column_spec(std::string_view text) {
  const std::string s(text);
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return standard_columns(std::stoul(s));
  }
  std::vector<ColumnSpec> out;
  std::stringstream items(s);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::vector<std::string> f;
    std::stringstream fields(item);
    std::string x;
    while (std::getline(fields, x, ':')) f.push_back(x);
    ColumnSpec c;
    try {
      if (f.size() == 2 && f[0] == "cat") {
        c.categorical = true;
        c.arity = std::stoul(f[1]);
      } else if (f.size() == 3 && f[0] == "int") {
        c.lo = std::stoll(f[1]);
        c.hi = std::stoll(f[2]);
      } else {
        throw SpecError("bad column spec '" + item + "'");
      }
    } catch (const std::logic_error&) {
      throw SpecError("bad column spec '" + item + "'");
    }
    if (c.categorical ? c.arity == 0 : c.lo > c.hi) throw SpecError("empty column in spec '" + item + "'");
    out.push_back(c);
  }
  if (out.empty()) throw SpecError("empty column spec");
  return out;
}

DecisionTable generate_table(const GenSpec& spec) {
  if (spec.columns.empty()) throw SpecError("a table needs at least one column");
  if (spec.target_rules == 0) throw SpecError("target rule count must be at least 1");
  const std::size_t n = spec.columns.size();

  // A leaf holds an inclusive range per column: values for numeric columns,
  // category indices for categorical ones.
  struct Leaf {
    std::vector<std::int64_t> lo, hi;
  };
  Leaf root;
  for (const auto& c : spec.columns) {
    if (c.categorical ? c.arity == 0 : c.lo > c.hi) throw SpecError("empty column in generator spec");
    root.lo.push_back(c.categorical ? 0 : c.lo);
    root.hi.push_back(c.categorical ? static_cast<std::int64_t>(c.arity) - 1 : c.hi);
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<Leaf> leaves{root};
  std::vector<std::size_t> open{0};  // leaves that can still be split
  std::vector<std::size_t> cols;
  while (leaves.size() < spec.target_rules && !open.empty()) {
    const std::size_t slot = static_cast<std::size_t>(pick(rng, 0, static_cast<std::int64_t>(open.size()) - 1));
    const std::size_t id = open[slot];
    cols.clear();
    for (std::size_t c = 0; c < n; ++c) {
      if (leaves[id].hi[c] > leaves[id].lo[c]) cols.push_back(c);
    }
    if (cols.empty()) {
      open[slot] = open.back();
      open.pop_back();
      continue;
    }
    const std::size_t c = cols[static_cast<std::size_t>(pick(rng, 0, static_cast<std::int64_t>(cols.size()) - 1))];
    const std::int64_t cut = pick(rng, leaves[id].lo[c], leaves[id].hi[c] - 1);
    Leaf right = leaves[id];
    right.lo[c] = cut + 1;
    leaves[id].hi[c] = cut;
    open.push_back(leaves.size());
    leaves.push_back(std::move(right));
  }
  if (leaves.size() * 20 < spec.target_rules * 19) {
    throw SpecError("universe too small for " + std::to_string(spec.target_rules) + " rules");
  }

  DecisionTable t;
  t.name = "synthetic-" + std::to_string(n) + "x" + std::to_string(spec.target_rules) + "-" + std::to_string(spec.seed);
  t.hit_policy = HitPolicy::Unique;
  t.completeness = Completeness::Complete;
  for (std::size_t c = 0; c < n; ++c) {
    const auto& col = spec.columns[c];
    Attribute a;
    a.name = "x" + std::to_string(c + 1);
    if (col.categorical) {
      a.kind = Kind::String;
      std::vector<std::string> names;
      for (std::size_t k = 0; k < col.arity; ++k) names.push_back(category_name(c, k));
      a.facet = parse_condition(join(names, ","), Kind::String);
    } else {
      a.kind = Kind::Integer;
      a.facet = parse_condition("[" + std::to_string(col.lo) + ".." + std::to_string(col.hi) + "]", Kind::Integer);
    }
    t.inputs.push_back(std::move(a));
  }
  t.outputs.push_back({"Grade", Kind::String, parse_condition("A,B,C,D,E,F,G", Kind::String)});

  std::uniform_int_distribution<std::size_t> grade(0, std::size(kGrades) - 1);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    const Leaf& leaf = leaves[k];
    Rule r;
    r.id = "r" + std::to_string(k + 1);
    for (std::size_t c = 0; c < n; ++c) {
      const bool full = leaf.lo[c] == root.lo[c] && leaf.hi[c] == root.hi[c];
      std::string text;
      if (full) {
        text = "-";
      } else if (spec.columns[c].categorical) {
        std::vector<std::string> names;
        for (auto v = leaf.lo[c]; v <= leaf.hi[c]; ++v) names.push_back(category_name(c, static_cast<std::size_t>(v)));
        text = join(names, ",");
      } else {
        text = "[" + std::to_string(leaf.lo[c]) + ".." + std::to_string(leaf.hi[c]) + "]";
      }
      r.inputs.push_back(parse_condition(text, t.inputs[c].kind));
    }
    r.outputs.emplace_back(std::string(kGrades[grade(rng)]));
    r.priority = row_rank(k, leaves.size());
    t.rules.push_back(std::move(r));
  }
  return t;
}

namespace {

// New entry text for one cell, or nothing when the cell cannot change.
std::optional<std::string> perturb_numeric(const IntervalSet& entry, const IntervalSet& facet, NoiseMode mode) {
  if (entry.size() != 1) return std::nullopt;
  const Interval1D iv = entry.parts().front();
  if (!iv.lo.value.finite() || !iv.hi.value.finite()) return std::nullopt;
  const Axis axis = entry.axis();
  const auto shift = [&](const Coord& c, int by) {
    return axis == Axis::Discrete ? Coord(c.as_int() + by) : Coord(c.as_double() + by);
  };
  std::optional<Interval1D> next;
  if (mode == NoiseMode::Overlap) {
    next = make_interval({shift(iv.lo.value, -1), iv.lo.closed}, {shift(iv.hi.value, 1), iv.hi.closed}, axis);
    const IntervalSet clamped = facet.intersect(*next);
    if (clamped.size() != 1) return std::nullopt;
    next = clamped.parts().front();
  } else {
    next = make_interval({shift(iv.lo.value, 1), iv.lo.closed}, {shift(iv.hi.value, -1), iv.hi.closed}, axis);
    if (!next) {
      // Too narrow to lose a unit on each side: keep the lower half.
      const Coord mid = axis == Axis::Discrete
                            ? Coord(iv.lo.value.as_int() + (iv.hi.value.as_int() - iv.lo.value.as_int() - 1) / 2)
                            : Coord(iv.lo.value.as_double() + (iv.hi.value.as_double() - iv.lo.value.as_double()) / 2);
      next = make_interval(iv.lo, {mid, axis == Axis::Discrete}, axis);
    }
  }
  if (!next || *next == iv) return std::nullopt;
  return render_interval(*next);
}

std::optional<std::string> perturb_categorical(const IntervalSet& entry, const IntervalSet& facet,
                                               const CategoryList& codec, NoiseMode mode, std::mt19937_64& rng) {
  std::vector<std::size_t> in, out;
  for (std::size_t k = 0; k < codec.size(); ++k) {
    const Coord centre(static_cast<double>(k) + 0.5);
    if (!facet.contains(centre)) continue;
    (entry.contains(centre) ? in : out).push_back(k);
  }
  if (mode == NoiseMode::Overlap) {
    if (out.empty()) return std::nullopt;
    in.push_back(out[static_cast<std::size_t>(pick(rng, 0, static_cast<std::int64_t>(out.size()) - 1))]);
    std::sort(in.begin(), in.end());
  } else {
    if (in.size() < 2) return std::nullopt;
    in.erase(in.begin() + pick(rng, 0, static_cast<std::int64_t>(in.size()) - 1));
  }
  std::vector<std::string> names;
  for (std::size_t k : in) names.push_back(render_value(codec.decode(static_cast<std::int64_t>(k))));
  return join(names, ",");
}

}  // namespace

std::uint64_t noise_seed(std::uint64_t seed, NoiseMode mode) {
  return splitmix(seed ^ (mode == NoiseMode::Overlap ? 1u : 2u));
}

DecisionTable inject_noise(const DecisionTable& table, NoiseMode mode, double fraction, std::uint64_t seed) {
  if (!(fraction > 0 && fraction <= 1)) throw SpecError("noise fraction must be in (0, 1]");
  DecisionTable out = table;
  if (table.rules.empty() || table.inputs.empty()) return out;

  const CategoryCodec codec = build_codec(table);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(table.rules.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng);
  const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(table.rules.size())));
  order.resize(std::min(count, order.size()));

  std::vector<std::size_t> cols(table.inputs.size());
  for (std::size_t k : order) {
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;
    std::shuffle(cols.begin(), cols.end(), rng);
    for (std::size_t c : cols) {
      const CategoryList* cl = codec.column(c);
      const IntervalSet facet = lower_to_intervals(table.inputs[c].facet, cl);
      const IntervalSet entry = lower_to_intervals(table.rules[k].inputs[c], cl).intersect(facet);
      auto text = cl ? perturb_categorical(entry, facet, *cl, mode, rng) : perturb_numeric(entry, facet, mode);
      if (!text) continue;
      out.rules[k].inputs[c] = parse_condition(*text, table.inputs[c].kind);
      break;
    }
  }
  return out;
}

namespace {

// Splits `box` along the faces of `cut` into the part inside `cut` and the
// slabs around it.
void split_box(const HyperRect& box, const HyperRect& cut, std::span<const Axis> axes, std::vector<HyperRect>& out) {
  HyperRect rest = box;
  for (std::size_t d = 0; d < box.size(); ++d) {
    const Interval1D& r = rest.dims[d];
    const Interval1D& c = cut.dims[d];
    if (auto below = make_interval(r.lo, {c.lo.value, !c.lo.closed}, axes[d])) {
      HyperRect piece = rest;
      piece.dims[d] = *below;
      out.push_back(std::move(piece));
    }
    if (auto above = make_interval({c.hi.value, !c.hi.closed}, r.hi, axes[d])) {
      HyperRect piece = rest;
      piece.dims[d] = *above;
      out.push_back(std::move(piece));
    }
    rest.dims[d] = *intersect(r, c, axes[d]);
  }
  out.push_back(std::move(rest));
}

}  // namespace

std::size_t pairwise_overlap_fragments(const DecisionTable& table) {
  const TableGeometry g = build_geometry(table);
  if (g.dimensions() == 0) return 0;
  const std::size_t count = g.rects.size();
  std::vector<std::size_t> order(count);
  for (std::size_t r = 0; r < count; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_lower(g.rects[a].dims[0].lo, g.rects[b].dims[0].lo) < 0;
  });

  std::size_t total = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const HyperRect& a = g.rects[order[i]];
    for (std::size_t j = i + 1; j < count; ++j) {
      const HyperRect& b = g.rects[order[j]];
      if (!intersect(a.dims[0], b.dims[0], g.axes[0])) {
        if (compare_lower(b.dims[0].lo, {a.dims[0].hi.value, !a.dims[0].hi.closed}) >= 0) break;
        continue;
      }
      const std::size_t ra = g.rect_rule[order[i]];
      const std::size_t rb = g.rect_rule[order[j]];
      if (ra == rb) continue;
      auto common = intersect_rects(a, b, g.axes);
      if (!common) continue;
      std::vector<HyperRect> pieces{*common};
      for (std::size_t o = 0; o < count; ++o) {
        const std::size_t ro = g.rect_rule[o];
        if (ro == ra || ro == rb || !intersect_rects(*common, g.rects[o], g.axes)) continue;
        std::vector<HyperRect> next;
        for (const auto& p : pieces) {
          if (intersect_rects(p, g.rects[o], g.axes)) {
            split_box(p, g.rects[o], g.axes, next);
          } else {
            next.push_back(p);
          }
        }
        pieces = std::move(next);
      }
      total += pieces.size();
    }
  }
  return total;
}

namespace {

template <class F>
double average_ms(std::size_t runs, F&& f) {
  double total = 0;
  for (std::size_t k = 0; k < runs; ++k) {
    const auto start = std::chrono::steady_clock::now();
    f();
    total += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return total / static_cast<double>(runs);
}

}  // namespace

BenchReport run_benchmark(const std::vector<GenSpec>& specs, double noise_fraction, std::size_t runs) {
  if (runs == 0) throw SpecError("benchmark needs at least one run");
  BenchReport report;
  for (const auto& spec : specs) {
    const DecisionTable base = generate_table(spec);
    const DecisionTable with_overlaps = inject_noise(base, NoiseMode::Overlap, noise_fraction, noise_seed(spec.seed, NoiseMode::Overlap));
    const DecisionTable with_gaps = inject_noise(base, NoiseMode::Missing, noise_fraction, noise_seed(spec.seed, NoiseMode::Missing));

    BenchCell cell;
    cell.columns = spec.columns.size();
    cell.rules = base.rules.size();
    cell.seed = spec.seed;
    cell.overlap_ms = average_ms(runs, [&] { cell.overlap_groups = find_overlapping_rules(with_overlaps).size(); });
    cell.missing_ms = average_ms(runs, [&] { cell.missing_regions = find_missing_rules(with_gaps).size(); });
    cell.pairwise_fragments = pairwise_overlap_fragments(with_overlaps);
    report.cells.push_back(cell);
  }
  return report;
}

std::string BenchReport::to_json() const {
  json doc = json::array();
  for (const auto& c : cells) {
    doc.push_back({{"columns", c.columns},
                   {"rules", c.rules},
                   {"overlapMs", c.overlap_ms},
                   {"missingMs", c.missing_ms},
                   {"overlapGroups", c.overlap_groups},
                   {"missingRegions", c.missing_regions},
                   {"pairwiseFragments", c.pairwise_fragments},
                   {"seed", c.seed}});
  }
  return doc.dump(2) + "\n";
}

std::string BenchReport::to_text() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%7s %6s %12s %12s %8s %8s %10s\n", "columns", "rules", "overlap ms", "missing ms",
                "groups", "regions", "fragments");
  out += line;
  for (const auto& c : cells) {
    std::snprintf(line, sizeof line, "%7zu %6zu %12.1f %12.1f %8zu %8zu %10zu\n", c.columns, c.rules, c.overlap_ms,
                  c.missing_ms, c.overlap_groups, c.missing_regions, c.pairwise_fragments);
    out += line;
  }
  return out;
}

BenchSuite load_suite(std::string_view document) {
  BenchSuite suite;
  try {
    const json doc = json::parse(document);
    suite.noise_fraction = doc.value("noiseFraction", 0.1);
    suite.runs = doc.value("runs", std::size_t{5});
    for (const auto& s : doc.at("specs")) {
      GenSpec spec;
      const auto& cols = s.at("columns");
      spec.columns = parse_column_spec(cols.is_string() ? cols.get<std::string>() : std::to_string(cols.get<int>()));
      spec.target_rules = s.at("rules").get<std::size_t>();
      spec.seed = s.value("seed", std::uint64_t{0});
      suite.specs.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("suite: ") + e.what());
  }
  return suite;
}

}  // namespace dmn
