#include "dmn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dmn/errors.hpp"

namespace dmn {

CategoryCodec build_codec(const DecisionTable& table) {
  CategoryCodec codec;
  for (std::size_t i = 0; i < table.inputs.size(); ++i) {
    const Attribute& a = table.inputs[i];
    if (is_numeric(a.kind)) {
      codec.columns.emplace_back(std::nullopt);
      continue;
    }
    CategoryList list(a.kind);
    if (a.kind == Kind::Boolean) {
      list.add(Value(false));
      list.add(Value(true));
    } else {
      for (const auto& v : literals_of(a.facet)) list.add(v);
      for (const auto& r : table.rules) {
        for (const auto& v : literals_of(r.inputs[i])) list.add(v);
      }
    }
    codec.columns.emplace_back(std::move(list));
  }
  return codec;
}

bool HyperRect::contains(std::span<const Coord> point) const {
  if (point.size() != dims.size()) throw DimensionError("point and box differ in dimensionality");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!dims[i].contains(point[i])) return false;
  }
  return true;
}

std::vector<Axis> axes_of(const DecisionTable& table) {
  std::vector<Axis> axes;
  for (const auto& a : table.inputs) axes.push_back(axis_for(a.kind));
  return axes;
}

Universe build_universe(const DecisionTable& table, const CategoryCodec& codec) {
  Universe u;
  for (std::size_t i = 0; i < table.inputs.size(); ++i) {
    u.dims.push_back(lower_to_intervals(table.inputs[i].facet, codec.column(i)));
  }
  return u;
}

namespace {

std::vector<HyperRect> cross_product(const std::vector<IntervalSet>& columns) {
  std::vector<HyperRect> out{HyperRect{}};
  for (const auto& col : columns) {
    std::vector<HyperRect> next;
    next.reserve(out.size() * col.size());
    for (const auto& partial : out) {
      for (const auto& part : col.parts()) {
        HyperRect r = partial;
        r.dims.push_back(part);
        next.push_back(std::move(r));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<HyperRect> rule_to_rects(const Rule& rule, const DecisionTable& table, const CategoryCodec& codec) {
  std::vector<IntervalSet> columns;
  for (std::size_t i = 0; i < table.inputs.size(); ++i) {
    const CategoryList* cl = codec.column(i);
    IntervalSet s = lower_to_intervals(rule.inputs[i], cl).intersect(lower_to_intervals(table.inputs[i].facet, cl));
    if (s.empty()) return {};
    columns.push_back(std::move(s));
  }
  return cross_product(columns);
}

std::optional<HyperRect> intersect_rects(const HyperRect& a, const HyperRect& b, std::span<const Axis> axes) {
  if (a.size() != b.size() || a.size() != axes.size()) {
    throw DimensionError("cannot intersect boxes of dimension " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  HyperRect out;
  out.dims.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto iv = intersect(a.dims[i], b.dims[i], axes[i]);
    if (!iv) return std::nullopt;
    out.dims.push_back(*iv);
  }
  return out;
}

TableGeometry build_geometry(const DecisionTable& table) {
  TableGeometry g;
  g.codec = build_codec(table);
  g.universe = build_universe(table, g.codec);
  g.axes = axes_of(table);
  g.rule_rects.resize(table.rules.size());
  for (std::size_t k = 0; k < table.rules.size(); ++k) {
    for (auto& r : rule_to_rects(table.rules[k], table, g.codec)) {
      g.rule_rects[k].push_back(g.rects.size());
      g.rects.push_back(std::move(r));
      g.rect_rule.push_back(k);
    }
  }
  return g;
}

std::vector<Coord> encode_input(const InputConfiguration& input, const CategoryCodec& codec) {
  if (input.values.size() != codec.columns.size()) throw DimensionError("input has the wrong number of values");
  std::vector<Coord> point;
  for (std::size_t i = 0; i < input.values.size(); ++i) {
    const CategoryList* cl = codec.column(i);
    if (cl == nullptr) {
      point.push_back(to_coord(input.values[i]));
    } else if (auto c = cl->code(input.values[i])) {
      point.emplace_back(static_cast<double>(*c) + 0.5);
    } else {
      point.push_back(Coord::pos_inf());
    }
  }
  return point;
}

std::string render_component(const Interval1D& iv, const CategoryList* codec) {
  if (codec == nullptr) return render_interval(iv);
  std::string out;
  for (std::size_t k = 0; k < codec->size(); ++k) {
    if (intersect(codec->encode(static_cast<std::int64_t>(k)), iv, Axis::Continuous)) {
      if (!out.empty()) out += ",";
      out += render_value(codec->values()[k]);
    }
  }
  return out;
}

std::vector<std::string> render_box(const HyperRect& box, const CategoryCodec& codec) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < box.size(); ++i) out.push_back(render_component(box.dims[i], codec.column(i)));
  return out;
}

void collect_cuts(const Interval1D& iv, std::vector<Coord>& out) {
  if (iv.lo.value.finite()) out.push_back(iv.lo.value);
  if (iv.hi.value.finite()) out.push_back(iv.hi.value);
}

namespace {

std::optional<Coord> sample_between(const Coord& a, const Coord& b, Axis axis) {
  if (axis == Axis::Discrete) {
    const __int128 lo = a.as_int();
    const __int128 hi = b.as_int();
    if (hi - lo < 2) return std::nullopt;
    return Coord(static_cast<std::int64_t>(lo + (hi - lo) / 2));
  }
  const double x = a.as_double();
  const double y = b.as_double();
  const double mid = x + (y - x) / 2;
  if (!(mid > x && mid < y)) return std::nullopt;
  return Coord(mid);
}

std::optional<Coord> sample_below(const Coord& c, Axis axis) {
  if (axis == Axis::Discrete) {
    if (c.as_int() == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
    return Coord(c.as_int() - 1);
  }
  const double x = c.as_double();
  return Coord(x - std::max(1.0, std::fabs(x)));
}

std::optional<Coord> sample_above(const Coord& c, Axis axis) {
  if (axis == Axis::Discrete) {
    if (c.as_int() == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
    return Coord(c.as_int() + 1);
  }
  const double x = c.as_double();
  return Coord(x + std::max(1.0, std::fabs(x)));
}

}  // namespace

std::vector<GridCell> compress_axis(std::vector<Coord> cuts, Axis axis) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<GridCell> cells;
  const Bound ninf{Coord::neg_inf(), false};
  const Bound pinf{Coord::pos_inf(), false};
  if (cuts.empty()) {
    cells.push_back({Interval1D::everything(), axis == Axis::Discrete ? Coord(0) : Coord(0.0)});
    return cells;
  }
  const auto open_cell = [&](Bound lo, Bound hi, std::optional<Coord> sample) {
    if (!sample) return;
    if (auto span = make_interval(lo, hi, axis)) cells.push_back({*span, *sample});
  };
  open_cell(ninf, {cuts.front(), false}, sample_below(cuts.front(), axis));
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    cells.push_back({Interval1D::point(cuts[i]), cuts[i]});
    if (i + 1 < cuts.size()) {
      open_cell({cuts[i], false}, {cuts[i + 1], false}, sample_between(cuts[i], cuts[i + 1], axis));
    }
  }
  open_cell({cuts.back(), false}, pinf, sample_above(cuts.back(), axis));
  return cells;
}

}  // namespace dmn
