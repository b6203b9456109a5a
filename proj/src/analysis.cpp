#include "dmn/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>

#include "dmn/errors.hpp"

namespace dmn {

namespace {

// ---------------------------------------------------------------------------
// Event order shared by both sweeps

// Where the sweep front sits relative to a value: just before it or just after.
struct Boundary {
  Coord value;
  bool after = false;
};

// Tie-rank at equal value: upper-open, lower-closed, upper-closed, lower-open.
int lower_rank(const Bound& b) { return b.closed ? 1 : 3; }
int upper_rank(const Bound& b) { return b.closed ? 2 : 0; }

// Every rect endpoint of every dimension mapped once to a dense integer key
// that respects the event order, so each recursion level sorts integers.
struct EventIndex {
  struct Dim {
    std::vector<std::uint32_t> lo_key;  // per rect
    std::vector<std::uint32_t> hi_key;
    std::vector<Boundary> boundary;     // per key
    std::vector<bool> upper;            // per key
  };
  std::vector<Dim> dims;

  explicit EventIndex(const TableGeometry& g) : dims(g.dimensions()) {
    struct Raw {
      Coord value;
      int rank;
      std::uint32_t rect;
    };
    const std::size_t count = g.rects.size();
    for (std::size_t d = 0; d < dims.size(); ++d) {
      std::vector<Raw> raw;
      raw.reserve(2 * count);
      for (std::size_t r = 0; r < count; ++r) {
        const Interval1D& iv = g.rects[r].dims[d];
        raw.push_back({iv.lo.value, lower_rank(iv.lo), static_cast<std::uint32_t>(r)});
        raw.push_back({iv.hi.value, upper_rank(iv.hi), static_cast<std::uint32_t>(r)});
      }
      std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
        if (auto c = a.value <=> b.value; c != 0) return c < 0;
        return a.rank < b.rank;
      });
      Dim& dim = dims[d];
      dim.lo_key.resize(count);
      dim.hi_key.resize(count);
      for (std::size_t k = 0; k < raw.size(); ++k) {
        const bool fresh = k == 0 || raw[k].value != raw[k - 1].value || raw[k].rank != raw[k - 1].rank;
        if (fresh) {
          dim.boundary.push_back({raw[k].value, raw[k].rank >= 2});
          dim.upper.push_back(raw[k].rank == 0 || raw[k].rank == 2);
        }
        const auto key = static_cast<std::uint32_t>(dim.boundary.size() - 1);
        (dim.upper.back() ? dim.hi_key : dim.lo_key)[raw[k].rect] = key;
      }
    }
  }

  // Events of `rects` in dimension d as (key << 32 | rect), sorted.
  void events(std::size_t d, const std::vector<std::uint32_t>& rects, std::vector<std::uint64_t>& out) const {
    out.clear();
    out.reserve(2 * rects.size());
    for (std::uint32_t r : rects) {
      out.push_back(std::uint64_t{dims[d].lo_key[r]} << 32 | r);
      out.push_back(std::uint64_t{dims[d].hi_key[r]} << 32 | r);
    }
    std::sort(out.begin(), out.end());
  }
};

constexpr std::uint32_t key_of(std::uint64_t e) { return static_cast<std::uint32_t>(e >> 32); }
constexpr std::uint32_t rect_of(std::uint64_t e) { return static_cast<std::uint32_t>(e); }

// Scratch buffers of one recursion level, reused by every call at that depth.
struct Level {
  std::vector<std::uint32_t> pos;    // per rect: index in items
  std::vector<std::uint32_t> items;
  std::vector<std::uint64_t> events;
};

// The active list: insertion and removal in O(1).
class ActiveList {
 public:
  explicit ActiveList(Level& level) : pos_(level.pos), items_(level.items) { items_.clear(); }

  void add(std::uint32_t r) {
    pos_[r] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(r);
  }
  void remove(std::uint32_t r) {
    const std::uint32_t at = pos_[r];
    items_[at] = items_.back();
    pos_[items_[at]] = at;
    items_.pop_back();
  }
  const std::vector<std::uint32_t>& items() const noexcept { return items_; }
  bool empty() const noexcept { return items_.empty(); }

 private:
  std::vector<std::uint32_t>& pos_;
  std::vector<std::uint32_t>& items_;
};

HyperRect joint_intersection(const TableGeometry& g, const std::vector<std::uint32_t>& rects) {
  HyperRect out = g.rects[rects.front()];
  for (std::size_t k = 1; k < rects.size(); ++k) {
    auto next = intersect_rects(out, g.rects[rects[k]], g.axes);
    if (!next) throw Error("internal: active rects share no point");
    out = std::move(*next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Maximal groups

// A family of rule sets kept as an antichain under inclusion.
class Antichain {
 public:
  explicit Antichain(std::size_t rules) : postings_(rules) {}

  bool covered(const std::vector<std::size_t>& set) const {
    const std::size_t pivot = *std::min_element(set.begin(), set.end(), [&](std::size_t a, std::size_t b) {
      return postings_[a].size() < postings_[b].size();
    });
    for (std::uint32_t id : postings_[pivot]) {
      const auto& g = groups_[id];
      if (alive_[id] && g.rules.size() >= set.size() &&
          std::includes(g.rules.begin(), g.rules.end(), set.begin(), set.end())) {
        return true;
      }
    }
    return false;
  }

  // Caller has checked covered(set) is false.
  void insert(OverlapGroup group) {
    for (std::size_t r : group.rules) {
      for (std::uint32_t id : postings_[r]) {
        const auto& g = groups_[id];
        if (alive_[id] && g.rules.size() < group.rules.size() &&
            std::includes(group.rules.begin(), group.rules.end(), g.rules.begin(), g.rules.end())) {
          alive_[id] = false;
        }
      }
    }
    const auto id = static_cast<std::uint32_t>(groups_.size());
    for (std::size_t r : group.rules) postings_[r].push_back(id);
    groups_.push_back(std::move(group));
    alive_.push_back(true);
  }

  std::vector<OverlapGroup> take() {
    std::vector<OverlapGroup> out;
    for (std::size_t id = 0; id < groups_.size(); ++id) {
      if (alive_[id]) out.push_back(std::move(groups_[id]));
    }
    std::sort(out.begin(), out.end(), [](const OverlapGroup& a, const OverlapGroup& b) { return a.rules < b.rules; });
    return out;
  }

 private:
  std::vector<OverlapGroup> groups_;
  std::vector<bool> alive_;
  std::vector<std::vector<std::uint32_t>> postings_;
};

class OverlapSweep {
 public:
  OverlapSweep(const TableGeometry& g, std::size_t rules)
      : g_(g), index_(g), family_(rules), levels_(g.dimensions(), Level{std::vector<std::uint32_t>(g.rects.size()), {}, {}}) {}

  std::vector<OverlapGroup> run() {
    if (g_.rects.empty() || g_.dimensions() == 0) return {};
    std::vector<std::uint32_t> all(g_.rects.size());
    for (std::size_t r = 0; r < all.size(); ++r) all[r] = static_cast<std::uint32_t>(r);
    sweep(0, all);
    return family_.take();
  }

 private:
  void sweep(std::size_t d, const std::vector<std::uint32_t>& rects) {
    auto& events = levels_[d].events;
    index_.events(d, rects, events);
    ActiveList active(levels_[d]);
    const auto& upper = index_.dims[d].upper;
    // Only recurse when the active list gained a rect since the last
    // recursion; otherwise it is a subset of a list already explored.
    bool grown = false;
    for (std::uint64_t e : events) {
      const std::uint32_t r = rect_of(e);
      if (!upper[key_of(e)]) {
        active.add(r);
        grown = true;
        continue;
      }
      if (grown) {
        if (d + 1 == g_.dimensions()) {
          emit(active.items());
        } else {
          sweep(d + 1, active.items());
        }
        grown = false;
      }
      active.remove(r);
    }
  }

  void emit(const std::vector<std::uint32_t>& rects) {
    std::vector<std::size_t> rules;
    rules.reserve(rects.size());
    for (std::uint32_t r : rects) rules.push_back(g_.rect_rule[r]);
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    if (rules.size() < 2 || family_.covered(rules)) return;
    family_.insert({std::move(rules), joint_intersection(g_, rects)});
  }

  const TableGeometry& g_;
  EventIndex index_;
  Antichain family_;
  std::vector<Level> levels_;
};

// ---------------------------------------------------------------------------
// Missing regions

std::size_t hash_coord(const Coord& c) {
  if (c.is_neg_inf()) return 0x9e3779b97f4a7c15ULL;
  if (c.is_pos_inf()) return 0xc2b2ae3d27d4eb4fULL;
  if (c.integral()) return std::hash<std::int64_t>{}(c.as_int());
  return std::hash<double>{}(c.as_double());
}

std::size_t hash_interval(const Interval1D& iv) {
  std::size_t h = hash_coord(iv.lo.value);
  h = h * 31 + hash_coord(iv.hi.value);
  return h * 4 + (iv.lo.closed ? 2 : 0) + (iv.hi.closed ? 1 : 0);
}

// Gap boxes found so far. A new box is merged with an existing one when they
// are contiguous in exactly one column and identical in all others; the
// merged box is re-inserted so merges cascade to a fixpoint.
class RegionList {
 public:
  explicit RegionList(std::vector<Axis> axes) : axes_(std::move(axes)), index_(axes_.size()) {}

  void add(HyperRect box) {
    const std::size_t n = axes_.size();
    std::vector<std::size_t> part(n);
    std::vector<std::size_t> key(n);
    while (true) {
      for (std::size_t d = 0; d < n; ++d) part[d] = hash_interval(box.dims[d]);
      for (std::size_t d = 0; d < n; ++d) {
        std::size_t h = d;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != d) h = h * 0x100000001b3ULL ^ part[k];
        }
        key[d] = h;
      }
      if (!merge_once(box, key)) break;
    }
    const auto id = static_cast<std::uint32_t>(boxes_.size());
    for (std::size_t d = 0; d < n; ++d) index_[d][key[d]].push_back(id);
    keys_.insert(keys_.end(), key.begin(), key.end());
    boxes_.push_back(std::move(box));
    alive_.push_back(true);
  }

  std::vector<HyperRect> take() {
    std::vector<HyperRect> out;
    for (std::size_t id = 0; id < boxes_.size(); ++id) {
      if (alive_[id]) out.push_back(std::move(boxes_[id]));
    }
    return out;
  }

 private:
  bool merge_once(HyperRect& box, const std::vector<std::size_t>& key) {
    for (std::size_t d = 0; d < axes_.size(); ++d) {
      auto it = index_[d].find(key[d]);
      if (it == index_[d].end()) continue;
      auto& bucket = it->second;
      for (auto c = bucket.rbegin(); c != bucket.rend(); ++c) {
        const HyperRect& other = boxes_[*c];
        if (!same_except(other, box, d)) continue;
        const Interval1D& a = other.dims[d];
        const Interval1D& b = box.dims[d];
        if (contiguous(a, b, axes_[d])) {
          box.dims[d] = {a.lo, b.hi};
        } else if (contiguous(b, a, axes_[d])) {
          box.dims[d] = {b.lo, a.hi};
        } else {
          continue;
        }
        kill(*c);
        return true;
      }
    }
    return false;
  }

  void kill(std::uint32_t id) {
    alive_[id] = false;
    const std::size_t n = axes_.size();
    for (std::size_t d = 0; d < n; ++d) {
      auto it = index_[d].find(keys_[id * n + d]);
      auto& bucket = it->second;
      bucket.erase(std::find(bucket.begin(), bucket.end(), id));
      if (bucket.empty()) index_[d].erase(it);
    }
  }

  static bool same_except(const HyperRect& a, const HyperRect& b, std::size_t skip) {
    for (std::size_t k = 0; k < a.dims.size(); ++k) {
      if (k != skip && a.dims[k] != b.dims[k]) return false;
    }
    return true;
  }

  std::vector<Axis> axes_;
  std::vector<HyperRect> boxes_;
  std::vector<bool> alive_;
  std::vector<std::size_t> keys_;  // per box, one key per dimension
  std::vector<std::unordered_map<std::size_t, std::vector<std::uint32_t>>> index_;
};

class MissingSweep {
 public:
  explicit MissingSweep(const TableGeometry& g)
      : g_(g), index_(g), regions_(g.axes), levels_(g.dimensions(), Level{std::vector<std::uint32_t>(g.rects.size()), {}, {}}) {
    const std::size_t n = g.dimensions();
    // full_from_[r]: first dimension from which r spans the whole universe.
    full_from_.assign(g.rects.size(), n);
    for (std::size_t r = 0; r < g.rects.size(); ++r) {
      std::size_t d = n;
      while (d > 0 && g.universe.dims[d - 1].intersect(g.rects[r].dims[d - 1]) == g.universe.dims[d - 1]) --d;
      full_from_[r] = d;
    }
    for (const auto& u : g.universe.dims) hull_.push_back(u.hull().value_or(Interval1D::everything()));
  }

  std::vector<HyperRect> run() {
    if (g_.dimensions() == 0) return {};
    std::vector<std::uint32_t> all(g_.rects.size());
    for (std::size_t r = 0; r < all.size(); ++r) all[r] = static_cast<std::uint32_t>(r);
    std::vector<Interval1D> prefix;
    sweep(0, all, prefix);
    return regions_.take();
  }

 private:
  void sweep(std::size_t d, const std::vector<std::uint32_t>& rects, std::vector<Interval1D>& prefix) {
    auto& events = levels_[d].events;
    index_.events(d, rects, events);
    const auto& dim = index_.dims[d];
    ActiveList active(levels_[d]);
    std::size_t spanning = 0;  // active rects covering the universe beyond d

    // Nothing outside the universe hull can be missing.
    const Interval1D& hull = hull_[d];
    Boundary last{hull.lo.value, !hull.lo.closed};
    std::size_t i = 0;
    while (i < events.size()) {
      const std::uint32_t key = key_of(events[i]);
      segment(d, last, dim.boundary[key], active, spanning != 0, prefix);
      for (; i < events.size() && key_of(events[i]) == key; ++i) {
        const std::uint32_t r = rect_of(events[i]);
        const bool spans = full_from_[r] <= d + 1;
        if (dim.upper[key]) {
          active.remove(r);
          spanning -= spans;
        } else {
          active.add(r);
          spanning += spans;
        }
      }
      last = dim.boundary[key];
    }
    segment(d, last, Boundary{hull.hi.value, hull.hi.closed}, active, spanning != 0, prefix);
  }

  // `covered`: some active rect already spans the universe in every later
  // dimension, so the slice holds no gap.
  void segment(std::size_t d, const Boundary& from, const Boundary& to, const ActiveList& active, bool covered,
               std::vector<Interval1D>& prefix) {
    auto seg = make_interval({from.value, !from.after}, {to.value, to.after}, g_.axes[d]);
    if (!seg) return;
    if (active.empty()) {
      gap(d, *seg, prefix);
      return;
    }
    if (covered || d + 1 == g_.dimensions()) return;
    prefix.push_back(*seg);
    sweep(d + 1, active.items(), prefix);
    prefix.pop_back();
  }

  // Records seg (clipped to the universe) under the prefix, spanning the
  // universe in every later dimension.
  void gap(std::size_t d, const Interval1D& seg, const std::vector<Interval1D>& prefix) {
    std::vector<HyperRect> boxes;
    const auto add = [&](const Interval1D& part) {
      HyperRect box;
      box.dims = prefix;
      box.dims.push_back(part);
      boxes.push_back(std::move(box));
    };
    if (g_.universe.dims[d].size() == 1) {
      if (auto part = intersect(g_.universe.dims[d].parts().front(), seg, g_.axes[d])) add(*part);
    } else {
      const IntervalSet clipped = g_.universe.dims[d].intersect(seg);
      for (const auto& part : clipped.parts()) add(part);
    }
    for (std::size_t k = d + 1; k < g_.dimensions(); ++k) {
      std::vector<HyperRect> next;
      for (const auto& partial : boxes) {
        for (const auto& part : g_.universe.dims[k].parts()) {
          HyperRect box = partial;
          box.dims.push_back(part);
          next.push_back(std::move(box));
        }
      }
      boxes = std::move(next);
    }
    for (auto& box : boxes) regions_.add(std::move(box));
  }

  const TableGeometry& g_;
  EventIndex index_;
  RegionList regions_;
  std::vector<Level> levels_;
  std::vector<std::size_t> full_from_;
  std::vector<Interval1D> hull_;
};

bool box_less(const HyperRect& a, const HyperRect& b) {
  for (std::size_t d = 0; d < a.dims.size(); ++d) {
    if (auto c = compare_lower(a.dims[d].lo, b.dims[d].lo); c != 0) return c < 0;
    if (auto c = compare_upper(a.dims[d].hi, b.dims[d].hi); c != 0) return c < 0;
  }
  return false;
}

std::size_t rule_count(const TableGeometry& g) {
  std::size_t n = 0;
  for (std::size_t r : g.rect_rule) n = std::max(n, r + 1);
  return std::max(n, g.rule_rects.size());
}

// Sweeping the dimensions with the fewest distinct endpoints first keeps the
// recursion narrow. Both sweeps are order-independent up to box merging.
std::vector<std::size_t> sweep_order(const TableGeometry& g) {
  const std::size_t n = g.dimensions();
  std::vector<std::size_t> distinct(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<Coord> cuts;
    for (const auto& r : g.rects) collect_cuts(r.dims[d], cuts);
    std::sort(cuts.begin(), cuts.end());
    distinct[d] = static_cast<std::size_t>(std::unique(cuts.begin(), cuts.end()) - cuts.begin());
  }
  std::vector<std::size_t> order(n);
  for (std::size_t d = 0; d < n; ++d) order[d] = d;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return distinct[a] < distinct[b]; });
  return order;
}

HyperRect permute(const HyperRect& box, const std::vector<std::size_t>& order) {
  HyperRect out;
  for (std::size_t d : order) out.dims.push_back(box.dims[d]);
  return out;
}

HyperRect unpermute(const HyperRect& box, const std::vector<std::size_t>& order) {
  HyperRect out;
  out.dims.resize(box.dims.size());
  for (std::size_t k = 0; k < order.size(); ++k) out.dims[order[k]] = box.dims[k];
  return out;
}

TableGeometry permute(const TableGeometry& g, const std::vector<std::size_t>& order) {
  TableGeometry out;
  out.rect_rule = g.rect_rule;
  out.rule_rects = g.rule_rects;
  for (std::size_t d : order) {
    out.axes.push_back(g.axes[d]);
    out.universe.dims.push_back(g.universe.dims[d]);
  }
  for (const auto& r : g.rects) out.rects.push_back(permute(r, order));
  return out;
}

}  // namespace

std::vector<OverlapGroup> find_overlapping_rules(const TableGeometry& geometry) {
  const auto order = sweep_order(geometry);
  auto groups = OverlapSweep(permute(geometry, order), rule_count(geometry)).run();
  for (auto& g : groups) g.witness = unpermute(g.witness, order);
  return groups;
}

std::vector<OverlapGroup> find_overlapping_rules(const DecisionTable& table) {
  return find_overlapping_rules(build_geometry(table));
}

std::vector<MissingRegion> find_missing_rules(const TableGeometry& geometry) {
  const auto order = sweep_order(geometry);
  auto boxes = MissingSweep(permute(geometry, order)).run();
  for (auto& box : boxes) box = unpermute(box, order);
  std::sort(boxes.begin(), boxes.end(), box_less);
  std::vector<MissingRegion> out;
  out.reserve(boxes.size());
  for (auto& box : boxes) {
    auto rendered = render_box(box, geometry.codec);
    out.push_back({std::move(box), std::move(rendered)});
  }
  return out;
}

std::vector<MissingRegion> find_missing_rules(const DecisionTable& table) {
  return find_missing_rules(build_geometry(table));
}

// ---------------------------------------------------------------------------
// Oracles

std::size_t CompressedGrid::cell_count() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

std::vector<Coord> CompressedGrid::sample(const std::vector<std::size_t>& cell) const {
  std::vector<Coord> out;
  out.reserve(cell.size());
  for (std::size_t d = 0; d < cell.size(); ++d) out.push_back(axes[d][cell[d]].sample);
  return out;
}

HyperRect CompressedGrid::box(const std::vector<std::size_t>& cell) const {
  HyperRect out;
  for (std::size_t d = 0; d < cell.size(); ++d) out.dims.push_back(axes[d][cell[d]].span);
  return out;
}

CompressedGrid compress_geometry(const TableGeometry& g, std::size_t cap) {
  CompressedGrid grid;
  std::size_t total = 1;
  for (std::size_t d = 0; d < g.dimensions(); ++d) {
    std::vector<Coord> cuts;
    for (const auto& r : g.rects) collect_cuts(r.dims[d], cuts);
    for (const auto& part : g.universe.dims[d].parts()) collect_cuts(part, cuts);
    grid.axes.push_back(compress_axis(std::move(cuts), g.axes[d]));
    const std::size_t m = grid.axes.back().size();
    if (m != 0 && total > cap / m) throw CapacityError("compressed grid exceeds " + std::to_string(cap) + " cells");
    total *= m;
  }
  return grid;
}

namespace {

using Bits = std::vector<std::uint64_t>;

// Per dimension and cell: which rects contain the cell's sample.
std::vector<std::vector<Bits>> cell_membership(const TableGeometry& g, const CompressedGrid& grid) {
  const std::size_t words = (g.rects.size() + 63) / 64;
  std::vector<std::vector<Bits>> out(grid.axes.size());
  for (std::size_t d = 0; d < grid.axes.size(); ++d) {
    for (const auto& cell : grid.axes[d]) {
      Bits b(words, 0);
      for (std::size_t r = 0; r < g.rects.size(); ++r) {
        if (g.rects[r].dims[d].contains(cell.sample)) b[r / 64] |= std::uint64_t{1} << (r % 64);
      }
      out[d].push_back(std::move(b));
    }
  }
  return out;
}

// Visits every cell whose sample lies in the universe, passing the set of
// rects covering it.
void for_each_cell(const TableGeometry& g, const CompressedGrid& grid,
                   const std::function<void(const std::vector<std::size_t>&, const Bits&)>& visit) {
  const std::size_t n = grid.axes.size();
  if (n == 0) return;
  const auto member = cell_membership(g, grid);
  const std::size_t words = (g.rects.size() + 63) / 64;
  std::vector<std::vector<bool>> inside(n);
  for (std::size_t d = 0; d < n; ++d) {
    for (const auto& cell : grid.axes[d]) inside[d].push_back(g.universe.dims[d].contains(cell.sample));
  }
  std::vector<Bits> acc(n + 1, Bits(words, ~std::uint64_t{0}));
  std::vector<std::size_t> idx(n, 0);
  const std::function<void(std::size_t)> walk = [&](std::size_t d) {
    if (d == n) {
      visit(idx, acc[n]);
      return;
    }
    for (std::size_t c = 0; c < grid.axes[d].size(); ++c) {
      if (!inside[d][c]) continue;
      idx[d] = c;
      for (std::size_t w = 0; w < words; ++w) acc[d + 1][w] = acc[d][w] & member[d][c][w];
      walk(d + 1);
    }
  };
  walk(0);
}

}  // namespace

std::vector<OverlapGroup> oracle_overlaps(const DecisionTable& table, std::size_t cap) {
  const TableGeometry g = build_geometry(table);
  const CompressedGrid grid = compress_geometry(g, cap);
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> seen;  // rule set -> first cell
  for_each_cell(g, grid, [&](const std::vector<std::size_t>& cell, const Bits& rects) {
    std::vector<std::size_t> rules;
    for (std::size_t w = 0; w < rects.size(); ++w) {
      for (std::uint64_t bits = rects[w]; bits != 0; bits &= bits - 1) {
        rules.push_back(g.rect_rule[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))]);
      }
    }
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    if (rules.size() >= 2) seen.try_emplace(std::move(rules), cell);
  });

  std::vector<OverlapGroup> out;
  for (const auto& [rules, cell] : seen) {
    const bool dominated = std::any_of(seen.begin(), seen.end(), [&](const auto& other) {
      return other.first.size() > rules.size() &&
             std::includes(other.first.begin(), other.first.end(), rules.begin(), rules.end());
    });
    if (!dominated) out.push_back({rules, grid.box(cell)});
  }
  return out;
}

MissingCells oracle_missing(const DecisionTable& table, std::size_t cap) {
  const TableGeometry g = build_geometry(table);
  MissingCells out{compress_geometry(g, cap), {}};
  for_each_cell(g, out.grid, [&](const std::vector<std::size_t>& cell, const Bits& rects) {
    if (std::all_of(rects.begin(), rects.end(), [](std::uint64_t w) { return w == 0; })) out.cells.push_back(cell);
  });
  return out;
}

}  // namespace dmn
