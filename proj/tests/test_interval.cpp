#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmn/interval.hpp"

using namespace dmn;

namespace {

Interval1D iv(Coord lo, bool lo_closed, Coord hi, bool hi_closed, Axis axis) {
  return *make_interval({lo, lo_closed}, {hi, hi_closed}, axis);
}

}  // namespace

TEST_CASE("make_interval normalizes per axis") {
  CHECK(iv(1, false, 5, false, Axis::Discrete) == Interval1D::closed(2, 4));
  CHECK(iv(Coord::neg_inf(), true, 3, true, Axis::Discrete).lo == Bound{Coord::neg_inf(), false});
  CHECK_FALSE(make_interval({1, false}, {2, false}, Axis::Discrete).has_value());
  CHECK(make_interval({1.0, false}, {2.0, false}, Axis::Continuous).has_value());
  CHECK_FALSE(make_interval({1.0, true}, {1.0, false}, Axis::Continuous).has_value());
  CHECK(make_interval({1.0, true}, {1.0, true}, Axis::Continuous).has_value());
  CHECK_FALSE(make_interval({3, true}, {2, true}, Axis::Discrete).has_value());
}

TEST_CASE("closed bounds touching at a point intersect, open ones do not") {
  const Axis a = Axis::Continuous;
  CHECK(intersect(iv(0.0, true, 1000.0, true, a), iv(1000.0, true, 2000.0, true, a), a) ==
        Interval1D::point(1000.0));
  CHECK_FALSE(intersect(iv(0.0, true, 1000.0, false, a), iv(1000.0, true, 2000.0, true, a), a).has_value());
  CHECK_FALSE(intersect(iv(0.0, true, 1000.0, true, a), iv(1000.0, false, 2000.0, true, a), a).has_value());
}

TEST_CASE("contiguity per axis") {
  CHECK(contiguous(Interval1D::closed(1, 4), Interval1D::closed(5, 9), Axis::Discrete));
  CHECK_FALSE(contiguous(Interval1D::closed(1, 4), Interval1D::closed(6, 9), Axis::Discrete));
  CHECK_FALSE(contiguous(Interval1D::closed(1, 4), Interval1D::closed(4, 9), Axis::Discrete));
  const Axis a = Axis::Continuous;
  CHECK(contiguous(iv(1.0, true, 4.0, true, a), iv(4.0, false, 9.0, true, a), a));
  CHECK(contiguous(iv(1.0, true, 4.0, false, a), iv(4.0, true, 9.0, true, a), a));
  CHECK_FALSE(contiguous(iv(1.0, true, 4.0, false, a), iv(4.0, false, 9.0, true, a), a));
  CHECK_FALSE(contiguous(iv(1.0, true, 4.0, true, a), iv(4.0, true, 9.0, true, a), a));
}

TEST_CASE("bound order") {
  CHECK(compare_lower({1.0, true}, {1.0, false}) == std::weak_ordering::less);
  CHECK(compare_upper({1.0, false}, {1.0, true}) == std::weak_ordering::less);
  CHECK(compare_lower({Coord::neg_inf(), false}, {-1e300, true}) == std::weak_ordering::less);
}

TEST_CASE("render_interval") {
  CHECK(render_interval(Interval1D::closed(500, 1000)) == "[500..1000]");
  CHECK(render_interval(iv(1.5, false, 2.0, false, Axis::Continuous)) == "(1.5..2)");
  CHECK(render_interval(iv(Coord::neg_inf(), false, 5.0, false, Axis::Continuous)) == "<5");
  CHECK(render_interval(iv(0.0, true, Coord::pos_inf(), false, Axis::Continuous)) == ">=0");
  CHECK(render_interval(Interval1D::point(7)) == "7");
  CHECK(render_interval(Interval1D::everything()) == "-");
}

TEST_CASE("property: set operations agree pointwise") {
  std::mt19937_64 rng(5);
  const auto random_set = [&](Axis axis) {
    std::vector<Interval1D> parts;
    const int n = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < n; ++i) {
      int a = std::uniform_int_distribution<int>(0, 10)(rng);
      int b = std::uniform_int_distribution<int>(0, 10)(rng);
      if (a > b) std::swap(a, b);
      const bool lc = rng() & 1;
      const bool hc = rng() & 1;
      const Coord lo = (rng() % 6 == 0) ? Coord::neg_inf() : (axis == Axis::Discrete ? Coord(a) : Coord(double(a)));
      const Coord hi = (rng() % 6 == 0) ? Coord::pos_inf() : (axis == Axis::Discrete ? Coord(b) : Coord(double(b)));
      if (auto p = make_interval({lo, lc}, {hi, hc}, axis)) parts.push_back(*p);
    }
    return IntervalSet(axis, parts);
  };
  for (int round = 0; round < 1000; ++round) {
    const Axis axis = (round % 2) ? Axis::Discrete : Axis::Continuous;
    const IntervalSet a = random_set(axis);
    const IntervalSet b = random_set(axis);
    const IntervalSet u = a.unite(b);
    const IntervalSet x = a.intersect(b);
    const IntervalSet c = a.complement();
    for (int i = -4; i <= 28; ++i) {
      const Coord p = axis == Axis::Discrete ? Coord(i / 2) : Coord(i / 2.0);
      CHECK(u.contains(p) == (a.contains(p) || b.contains(p)));
      CHECK(x.contains(p) == (a.contains(p) && b.contains(p)));
      CHECK(c.contains(p) == !a.contains(p));
    }
    CHECK(c.complement() == a);
    for (std::size_t i = 1; i < u.parts().size(); ++i) {
      CHECK_FALSE(contiguous(u.parts()[i - 1], u.parts()[i], axis));
    }
  }
}
