#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dmn {

// How an axis treats the gap between two values. Integer columns live on a
// Discrete axis (every bound normalizes to a closed integer); real and
// categorical columns live on a Continuous axis.
enum class Axis : std::uint8_t { Discrete, Continuous };

// A position on one axis: an exact int64, a double, or an infinity. All
// coordinates on one axis share the same finite representation.
class Coord {
 public:
  constexpr Coord() = default;
  constexpr Coord(std::int64_t v) : integral_(true), i_(v) {}  // NOLINT
  constexpr Coord(int v) : Coord(std::int64_t{v}) {}           // NOLINT
  constexpr Coord(double v) : integral_(false), d_(v) {}       // NOLINT

  static constexpr Coord neg_inf() { return Coord(InfTag{}, -1); }
  static constexpr Coord pos_inf() { return Coord(InfTag{}, 1); }

  bool finite() const noexcept { return inf_ == 0; }
  bool is_neg_inf() const noexcept { return inf_ < 0; }
  bool is_pos_inf() const noexcept { return inf_ > 0; }
  bool integral() const noexcept { return integral_; }
  std::int64_t as_int() const noexcept { return i_; }
  double as_double() const noexcept { return integral_ ? static_cast<double>(i_) : d_; }

  friend std::weak_ordering operator<=>(const Coord& a, const Coord& b);
  friend bool operator==(const Coord& a, const Coord& b) { return (a <=> b) == 0; }

  std::string str() const;

 private:
  struct InfTag {};
  constexpr Coord(InfTag, int sign) : inf_(static_cast<std::int8_t>(sign)) {}

  std::int8_t inf_ = 0;
  bool integral_ = true;
  std::int64_t i_ = 0;
  double d_ = 0.0;
};

struct Bound {
  Coord value;
  bool closed = false;

  bool operator==(const Bound&) const = default;
};

// A non-empty interval. Use make_interval() to build one from raw bounds.
struct Interval1D {
  Bound lo;
  Bound hi;

  bool contains(const Coord& x) const;
  bool operator==(const Interval1D&) const = default;

  static Interval1D closed(Coord a, Coord b) { return {{a, true}, {b, true}}; }
  static Interval1D point(Coord a) { return closed(a, a); }
  static Interval1D everything() { return {{Coord::neg_inf(), false}, {Coord::pos_inf(), false}}; }
};

// Normalizes the bounds for `axis` and returns nullopt when the interval is
// empty. Infinite bounds are forced open; discrete finite bounds are closed.
std::optional<Interval1D> make_interval(Bound lo, Bound hi, Axis axis);

std::optional<Interval1D> intersect(const Interval1D& a, const Interval1D& b, Axis axis);

// True when `a` ends exactly where `b` begins, leaving no gap and no overlap.
bool contiguous(const Interval1D& a, const Interval1D& b, Axis axis);

// Orders lower bounds by where they start and upper bounds by where they end.
std::weak_ordering compare_lower(const Bound& a, const Bound& b);
std::weak_ordering compare_upper(const Bound& a, const Bound& b);

// Text in S-FEEL interval syntax: "[a..b]", "(a..b)", "<v", ">=v", "v", "-".
std::string render_interval(const Interval1D& iv);

// Sorted union of pairwise disjoint, non-contiguous intervals.
class IntervalSet {
 public:
  explicit IntervalSet(Axis axis = Axis::Continuous) : axis_(axis) {}
  IntervalSet(Axis axis, std::vector<Interval1D> parts);

  static IntervalSet full(Axis axis) { return IntervalSet(axis, {Interval1D::everything()}); }

  Axis axis() const noexcept { return axis_; }
  const std::vector<Interval1D>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }

  bool contains(const Coord& x) const;
  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet intersect(const Interval1D& iv) const;
  IntervalSet complement() const;
  std::optional<Interval1D> hull() const;

  bool operator==(const IntervalSet& other) const { return axis_ == other.axis_ && parts_ == other.parts_; }

 private:
  Axis axis_;
  std::vector<Interval1D> parts_;
};

}  // namespace dmn
