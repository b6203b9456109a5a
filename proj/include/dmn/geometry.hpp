#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmn/interval.hpp"
#include "dmn/model.hpp"

namespace dmn {

// Per input column: the category list for string/boolean columns, nothing for
// numeric columns (identity encoding).
struct CategoryCodec {
  std::vector<std::optional<CategoryList>> columns;

  const CategoryList* column(std::size_t i) const { return columns.at(i) ? &*columns[i] : nullptr; }
  bool operator==(const CategoryCodec&) const = default;
};

// Categories in facet declaration order, then in order of first appearance in
// the rules. Boolean columns are always {false, true}.
CategoryCodec build_codec(const DecisionTable& table);

// An iso-oriented box: one interval per input column.
struct HyperRect {
  std::vector<Interval1D> dims;

  std::size_t size() const noexcept { return dims.size(); }
  bool contains(std::span<const Coord> point) const;
  bool operator==(const HyperRect&) const = default;
};

// Lowered facets: the space against which completeness is judged.
struct Universe {
  std::vector<IntervalSet> dims;
};

std::vector<Axis> axes_of(const DecisionTable& table);

Universe build_universe(const DecisionTable& table, const CategoryCodec& codec);

// Lowers a rule to boxes: per column, entry ∩ facet, expanded as a cross
// product. Empty when some column has no admissible value.
std::vector<HyperRect> rule_to_rects(const Rule& rule, const DecisionTable& table, const CategoryCodec& codec);

std::optional<HyperRect> intersect_rects(const HyperRect& a, const HyperRect& b, std::span<const Axis> axes);

// Everything the analyses need, lowered once.
struct TableGeometry {
  CategoryCodec codec;
  Universe universe;
  std::vector<Axis> axes;
  std::vector<HyperRect> rects;      // all boxes of all rules
  std::vector<std::size_t> rect_rule;  // owning rule index per box
  std::vector<std::vector<std::size_t>> rule_rects;  // box indices per rule

  std::size_t dimensions() const noexcept { return axes.size(); }
};

TableGeometry build_geometry(const DecisionTable& table);

// Point of an input configuration in the encoded space. Categorical values
// land at the centre of their unit cell.
std::vector<Coord> encode_input(const InputConfiguration& input, const CategoryCodec& codec);

// S-FEEL text for one component of a box; categorical components are decoded
// back to a category list.
std::string render_component(const Interval1D& iv, const CategoryList* codec);
std::vector<std::string> render_box(const HyperRect& box, const CategoryCodec& codec);

// ---------------------------------------------------------------------------
// Coordinate compression

// An elementary cell of one compressed axis and a value inside it.
struct GridCell {
  Interval1D span;
  Coord sample;
};

// Cells induced by `cuts`: (-inf,c1), [c1], (c1,c2), ..., [ck], (ck,+inf),
// normalized for the axis, skipping cells that hold no value of the axis.
std::vector<GridCell> compress_axis(std::vector<Coord> cuts, Axis axis);

// Finite endpoints of every given interval.
void collect_cuts(const Interval1D& iv, std::vector<Coord>& out);

}  // namespace dmn
