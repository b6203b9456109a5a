#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmn/errors.hpp"
#include "dmn/sfeel.hpp"
#include "support.hpp"

using namespace dmn;

namespace {

Condition interval(bool lo_closed, std::int64_t lo, std::int64_t hi, bool hi_closed) {
  return {Kind::Integer, IntervalTest{lo_closed, Term::of(Value(lo)), Term::of(Value(hi)), hi_closed}};
}

Condition match(Kind kind, Value v) { return {kind, MatchTerm{Term::of(std::move(v))}}; }

IntervalSet set_of(Axis axis, std::vector<Interval1D> parts) { return IntervalSet(axis, std::move(parts)); }

}  // namespace

TEST_CASE("parse: closed interval") {
  CHECK(parse_condition("[250..750]", Kind::Integer) == interval(true, 250, 750, true));
}

TEST_CASE("parse: categorical alternative") {
  const Condition c = parse_condition("high,medium,low", Kind::String);
  const Condition expected{Kind::String, Alternative{{match(Kind::String, Value("high")),
                                                      match(Kind::String, Value("medium")),
                                                      match(Kind::String, Value("low"))}}};
  CHECK(c == expected);
}

TEST_CASE("parse: dash is any value") {
  CHECK(parse_condition("-", Kind::Real).is_any());
  CHECK(parse_condition("  -  ", Kind::String).is_any());
}

TEST_CASE("parse: interval or comparison") {
  const Condition c = parse_condition("[0..18],>= 70", Kind::Integer);
  const Condition expected{Kind::Integer,
                           Alternative{{interval(true, 0, 18, true),
                                        Condition{Kind::Integer, Comparison{CompareOp::GreaterEq, Term::of(Value(70))}}}}};
  CHECK(c == expected);
}

TEST_CASE("parse: bare term is a match, whitespace is insignificant") {
  CHECK(parse_condition("70", Kind::Integer) == match(Kind::Integer, Value(70)));
  CHECK(parse_condition(" [ 1 .. 2 ) ", Kind::Integer) == interval(true, 1, 2, false));
  CHECK(parse_condition("]1..2[", Kind::Integer) == interval(false, 1, 2, false));
  CHECK(parse_condition("\"a b\"", Kind::String) == match(Kind::String, Value("a b")));
  CHECK(parse_condition("true", Kind::Boolean) == match(Kind::Boolean, Value(true)));
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse_condition("[1..", Kind::Integer), SyntaxError);
  CHECK_THROWS_AS(parse_condition("1,,2", Kind::Integer), SyntaxError);
  CHECK_THROWS_AS(parse_condition("", Kind::Integer), SyntaxError);
  CHECK_THROWS_AS(parse_condition("< 5", Kind::String), TypeError);
  CHECK_THROWS_AS(parse_condition("[0..18]", Kind::String), TypeError);
  CHECK_THROWS_AS(parse_condition("[0..18]", Kind::Boolean), TypeError);
  CHECK_THROWS_AS(parse_condition("1.5", Kind::Integer), TypeError);
  CHECK_THROWS_AS(parse_condition("yes", Kind::Boolean), TypeError);
  CHECK_THROWS_AS(parse_condition("high", Kind::Integer), TypeError);
  CHECK_THROWS_AS(parse_condition("1/0", Kind::Integer), EvalError);
  CHECK_THROWS_AS(parse_condition("not(1,2)", Kind::Integer), SyntaxError);
}

TEST_CASE("fold_term") {
  CHECK(fold_term(Term::of(Value(70))) == Value(70));
  CHECK(fold_term(Term::apply(ArithOp::Mul, Term::of(Value(2)), Term::of(Value(500)))) == Value(1000));
  CHECK_THROWS_AS(fold_term(Term::apply(ArithOp::Div, Term::of(Value(1)), Term::of(Value(0)))), EvalError);
  CHECK_THROWS_AS(fold_term(Term::apply(ArithOp::Div, Term::of(Value(1.0)), Term::of(Value(0.0)))), EvalError);
  CHECK(fold_term(Term::apply(ArithOp::Div, Term::of(Value(-9)), Term::of(Value(3)))) == Value(-3));
  CHECK_THROWS_AS(fold_term(Term::apply(ArithOp::Div, Term::of(Value(7)), Term::of(Value(2)))), TypeError);
  CHECK(fold_term(Term::apply(ArithOp::Div, Term::of(Value(7.0)), Term::of(Value(2.0)))) == Value(3.5));
  CHECK(parse_literal("2 * 500", Kind::Integer) == Value(1000));
  CHECK(parse_literal("-(3 - 5)", Kind::Integer) == Value(2));
  CHECK_THROWS_AS(parse_literal("9223372036854775807 + 1", Kind::Integer), EvalError);
}

TEST_CASE("satisfies") {
  const Condition c = parse_condition("[0..18],>= 70", Kind::Integer);
  CHECK(satisfies(c, Value(17)));
  CHECK(satisfies(c, Value(70)));
  CHECK_FALSE(satisfies(c, Value(45)));
  CHECK_THROWS_AS(satisfies(c, Value(17.0)), TypeError);
  CHECK(satisfies(parse_condition("not(\"x\")", Kind::String), Value("y")));
  CHECK_FALSE(satisfies(parse_condition("not(\"x\")", Kind::String), Value("x")));
  CHECK(satisfies(parse_condition("(1..2]", Kind::Real), Value(2.0)));
  CHECK_FALSE(satisfies(parse_condition("(1..2]", Kind::Real), Value(1.0)));
}

TEST_CASE("lower_to_intervals") {
  CHECK(lower_to_intervals(parse_condition("-", Kind::Real)) == IntervalSet::full(Axis::Continuous));
  CHECK(lower_to_intervals(parse_condition("[0..18],>= 70", Kind::Integer)) ==
        set_of(Axis::Discrete, {Interval1D::closed(0, 18), {{70, true}, {Coord::pos_inf(), false}}}));

  CategoryList codec(Kind::String);
  codec.add(Value("Refinancing"));
  codec.add(Value("CardPayoff"));
  CHECK(lower_to_intervals(parse_condition("Refinancing", Kind::String), &codec) ==
        set_of(Axis::Continuous, {{{0, true}, {1, false}}}));
  CHECK(lower_to_intervals(parse_condition("not(Refinancing)", Kind::String), &codec) ==
        set_of(Axis::Continuous, {{{1, true}, {2, false}}}));
  CHECK_THROWS_AS(lower_to_intervals(parse_condition("Leasing", Kind::String), &codec), CodecError);

  CHECK(lower_to_intervals(parse_condition("< 5", Kind::Integer)) ==
        set_of(Axis::Discrete, {{{Coord::neg_inf(), false}, {4, true}}}));
  CHECK(lower_to_intervals(parse_condition("not(5)", Kind::Real)) ==
        set_of(Axis::Continuous, {{{Coord::neg_inf(), false}, {5.0, false}}, {{5.0, false}, {Coord::pos_inf(), false}}}));
  CHECK(lower_to_intervals(parse_condition("[1..3],[4..6]", Kind::Integer)) ==
        set_of(Axis::Discrete, {Interval1D::closed(1, 6)}));
}

TEST_CASE("property: satisfies agrees with the lowering, and rendering round-trips") {
  test::TableMaker maker(11);
  std::size_t checked = 0;
  for (int round = 0; round < 2000; ++round) {
    const auto kind = static_cast<Kind>(maker.pick(0, 3));
    std::set<std::string> cats;
    const std::string text = maker.random_entry(kind, cats);
    const Condition c = parse_condition(text, kind);
    CAPTURE(text);

    const Condition again = parse_condition(render(c), kind);
    CHECK(again == c);

    CategoryList codec(kind);
    std::vector<Value> values;
    if (kind == Kind::String) {
      for (const auto& s : cats) codec.add(Value(s));
      values = codec.values();
    } else if (kind == Kind::Boolean) {
      codec.add(Value(false));
      codec.add(Value(true));
      values = codec.values();
    } else {
      for (int i = -2; i <= 22; ++i) {
        values.push_back(kind == Kind::Integer ? Value(i / 2) : Value(i / 2.0));
      }
    }
    const IntervalSet set = lower_to_intervals(c, is_categorical(kind) ? &codec : nullptr);
    CHECK(lower_to_intervals(parse_condition(render(c), kind), is_categorical(kind) ? &codec : nullptr) == set);
    const auto& parts = set.parts();
    for (std::size_t i = 1; i < parts.size(); ++i) {
      CHECK(compare_upper(parts[i - 1].hi, parts[i].lo) != std::weak_ordering::greater);
      CHECK_FALSE(intersect(parts[i - 1], parts[i], set.axis()).has_value());
      CHECK_FALSE(contiguous(parts[i - 1], parts[i], set.axis()));
    }
    CHECK(IntervalSet(set.axis(), parts) == set);
    for (const Value& v : values) {
      const Coord x = is_categorical(kind) ? Coord(static_cast<double>(*codec.code(v)) + 0.5) : to_coord(v);
      CHECK(satisfies(c, v) == set.contains(x));
      ++checked;
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("property: alternative is the disjunction of its options") {
  test::TableMaker maker(12);
  for (int round = 0; round < 500; ++round) {
    std::set<std::string> cats;
    const std::string a = maker.numeric_atom();
    const std::string b = maker.numeric_atom();
    const Condition ca = parse_condition(a, Kind::Real);
    const Condition cb = parse_condition(b, Kind::Real);
    const Condition both = parse_condition(a + "," + b, Kind::Real);
    for (int i = -2; i <= 22; ++i) {
      const Value v(i / 2.0);
      CHECK(satisfies(both, v) == (satisfies(ca, v) || satisfies(cb, v)));
    }
  }
}
