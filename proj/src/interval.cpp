#include "dmn/interval.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "dmn/value.hpp"

namespace dmn {

std::weak_ordering operator<=>(const Coord& a, const Coord& b) {
  if (a.inf_ != b.inf_) return a.inf_ <=> b.inf_;
  if (a.inf_ != 0) return std::weak_ordering::equivalent;
  if (a.integral_ && b.integral_) return a.i_ <=> b.i_;
  if (!a.integral_ && !b.integral_) {
    if (a.d_ < b.d_) return std::weak_ordering::less;
    if (b.d_ < a.d_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  // Mixed representations never share an axis; compare exactly anyway.
  const long double x = a.integral_ ? static_cast<long double>(a.i_) : a.d_;
  const long double y = b.integral_ ? static_cast<long double>(b.i_) : b.d_;
  if (x < y) return std::weak_ordering::less;
  if (y < x) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::string Coord::str() const {
  if (inf_ < 0) return "-inf";
  if (inf_ > 0) return "+inf";
  return integral_ ? std::to_string(i_) : render_real(d_);
}

bool Interval1D::contains(const Coord& x) const {
  const auto l = lo.value <=> x;
  const auto h = x <=> hi.value;
  const bool above_lo = l < 0 || (l == 0 && lo.closed);
  const bool below_hi = h < 0 || (h == 0 && hi.closed);
  return above_lo && below_hi;
}

std::optional<Interval1D> make_interval(Bound lo, Bound hi, Axis axis) {
  if (!lo.value.finite()) lo.closed = false;
  if (!hi.value.finite()) hi.closed = false;
  if (lo.value.is_pos_inf() || hi.value.is_neg_inf()) return std::nullopt;

  if (axis == Axis::Discrete) {
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
    if (lo.value.finite() && !lo.closed) {
      assert(lo.value.integral());
      if (lo.value.as_int() == kMax) return std::nullopt;
      lo = {Coord(lo.value.as_int() + 1), true};
    }
    if (hi.value.finite() && !hi.closed) {
      assert(hi.value.integral());
      if (hi.value.as_int() == kMin) return std::nullopt;
      hi = {Coord(hi.value.as_int() - 1), true};
    }
  }

  const auto c = lo.value <=> hi.value;
  if (c > 0) return std::nullopt;
  if (c == 0 && !(lo.closed && hi.closed)) return std::nullopt;
  return Interval1D{lo, hi};
}

std::weak_ordering compare_lower(const Bound& a, const Bound& b) {
  if (auto c = a.value <=> b.value; c != 0) return c;
  if (a.closed == b.closed) return std::weak_ordering::equivalent;
  return a.closed ? std::weak_ordering::less : std::weak_ordering::greater;
}

std::weak_ordering compare_upper(const Bound& a, const Bound& b) {
  if (auto c = a.value <=> b.value; c != 0) return c;
  if (a.closed == b.closed) return std::weak_ordering::equivalent;
  return a.closed ? std::weak_ordering::greater : std::weak_ordering::less;
}

std::optional<Interval1D> intersect(const Interval1D& a, const Interval1D& b, Axis axis) {
  const Bound& lo = compare_lower(a.lo, b.lo) < 0 ? b.lo : a.lo;
  const Bound& hi = compare_upper(a.hi, b.hi) < 0 ? a.hi : b.hi;
  return make_interval(lo, hi, axis);
}

bool contiguous(const Interval1D& a, const Interval1D& b, Axis axis) {
  if (!a.hi.value.finite() || !b.lo.value.finite()) return false;
  if (axis == Axis::Discrete) {
    const auto end = a.hi.value.as_int();
    return end != std::numeric_limits<std::int64_t>::max() && end + 1 == b.lo.value.as_int();
  }
  return a.hi.value == b.lo.value && a.hi.closed != b.lo.closed;
}

std::string render_interval(const Interval1D& iv) {
  const bool lo_inf = !iv.lo.value.finite();
  const bool hi_inf = !iv.hi.value.finite();
  if (lo_inf && hi_inf) return "-";
  if (lo_inf) return (iv.hi.closed ? "<=" : "<") + iv.hi.value.str();
  if (hi_inf) return (iv.lo.closed ? ">=" : ">") + iv.lo.value.str();
  if (iv.lo.value == iv.hi.value) return iv.lo.value.str();
  return std::string(iv.lo.closed ? "[" : "(") + iv.lo.value.str() + ".." + iv.hi.value.str() +
         (iv.hi.closed ? "]" : ")");
}

IntervalSet::IntervalSet(Axis axis, std::vector<Interval1D> parts) : axis_(axis) {
  std::vector<Interval1D> items;
  items.reserve(parts.size());
  for (const auto& p : parts) {
    if (auto iv = make_interval(p.lo, p.hi, axis)) items.push_back(*iv);
  }
  std::sort(items.begin(), items.end(),
            [](const Interval1D& a, const Interval1D& b) { return compare_lower(a.lo, b.lo) < 0; });
  for (const auto& iv : items) {
    if (!parts_.empty()) {
      auto& last = parts_.back();
      if (dmn::intersect(last, iv, axis) || contiguous(last, iv, axis)) {
        if (compare_upper(last.hi, iv.hi) < 0) last.hi = iv.hi;
        continue;
      }
    }
    parts_.push_back(iv);
  }
}

bool IntervalSet::contains(const Coord& x) const {
  // First part whose upper end is not below x.
  auto it = std::lower_bound(parts_.begin(), parts_.end(), x, [](const Interval1D& iv, const Coord& v) {
    const auto c = iv.hi.value <=> v;
    return c < 0 || (c == 0 && !iv.hi.closed);
  });
  return it != parts_.end() && it->contains(x);
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval1D> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(axis_, std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval1D> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const auto& a = parts_[i];
    const auto& b = other.parts_[j];
    if (auto iv = dmn::intersect(a, b, axis_)) out.push_back(*iv);
    if (compare_upper(a.hi, b.hi) < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(axis_, std::move(out));
}

IntervalSet IntervalSet::intersect(const Interval1D& iv) const { return intersect(IntervalSet(axis_, {iv})); }

IntervalSet IntervalSet::complement() const {
  std::vector<Interval1D> out;
  Bound lo{Coord::neg_inf(), false};
  for (const auto& p : parts_) {
    if (auto gap = make_interval(lo, {p.lo.value, !p.lo.closed}, axis_)) out.push_back(*gap);
    lo = {p.hi.value, !p.hi.closed};
  }
  if (auto gap = make_interval(lo, {Coord::pos_inf(), false}, axis_)) out.push_back(*gap);
  return IntervalSet(axis_, std::move(out));
}

std::optional<Interval1D> IntervalSet::hull() const {
  if (parts_.empty()) return std::nullopt;
  return Interval1D{parts_.front().lo, parts_.back().hi};
}

}  // namespace dmn
