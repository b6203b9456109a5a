#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dmn/geometry.hpp"
#include "dmn/model.hpp"

namespace dmn {

// A maximal set of rules that some input triggers together.
struct OverlapGroup {
  std::vector<std::size_t> rules;  // rule indices, ascending
  HyperRect witness;               // joint intersection found by the search

  bool operator==(const OverlapGroup&) const = default;
};

// A box of the universe that no rule covers.
struct MissingRegion {
  HyperRect box;
  std::vector<std::string> rendered;  // one S-FEEL condition per input column
};

// Line sweep over the rule boxes, one dimension at a time. Groups come back
// sorted by member list.
std::vector<OverlapGroup> find_overlapping_rules(const DecisionTable& table);
std::vector<OverlapGroup> find_overlapping_rules(const TableGeometry& geometry);

// Line sweep over the universe recording the uncovered segments; adjacent
// gap boxes are merged. Regions are pairwise disjoint.
std::vector<MissingRegion> find_missing_rules(const DecisionTable& table);
std::vector<MissingRegion> find_missing_rules(const TableGeometry& geometry);

// ---------------------------------------------------------------------------
// Brute-force oracles over the compressed grid

inline constexpr std::size_t kDefaultCellCap = 1'000'000;

struct CompressedGrid {
  std::vector<std::vector<GridCell>> axes;

  std::size_t cell_count() const;
  std::vector<Coord> sample(const std::vector<std::size_t>& cell) const;
  HyperRect box(const std::vector<std::size_t>& cell) const;
};

// Grid induced by every rule box endpoint and every universe endpoint.
// Throws CapacityError when the cell product exceeds `cap`.
CompressedGrid compress_geometry(const TableGeometry& geometry, std::size_t cap = kDefaultCellCap);

std::vector<OverlapGroup> oracle_overlaps(const DecisionTable& table, std::size_t cap = kDefaultCellCap);

struct MissingCells {
  CompressedGrid grid;
  std::vector<std::vector<std::size_t>> cells;  // uncovered cells inside the universe, odometer order
};

MissingCells oracle_missing(const DecisionTable& table, std::size_t cap = kDefaultCellCap);

}  // namespace dmn
