#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dmn/interval.hpp"
#include "dmn/value.hpp"

namespace dmn {

enum class ArithOp : std::uint8_t { Add, Sub, Mul, Div };
enum class CompareOp : std::uint8_t { Less, Greater, LessEq, GreaterEq };

// A ground term: a literal, or one of the four arithmetic functions applied
// to two sub-terms.
struct Term {
  Value literal;
  std::optional<ArithOp> op;
  std::vector<Term> args;

  static Term of(Value v) { return Term{std::move(v), std::nullopt, {}}; }
  static Term apply(ArithOp op, Term lhs, Term rhs);

  bool is_literal() const noexcept { return !op.has_value(); }
  bool operator==(const Term&) const = default;
};

struct AnyValue {
  bool operator==(const AnyValue&) const = default;
};
struct MatchTerm {
  Term term;
  bool operator==(const MatchTerm&) const = default;
};
struct NotTerm {
  Term term;
  bool operator==(const NotTerm&) const = default;
};
struct Comparison {
  CompareOp op;
  Term term;
  bool operator==(const Comparison&) const = default;
};
struct IntervalTest {
  bool lo_closed;
  Term lo;
  Term hi;
  bool hi_closed;
  bool operator==(const IntervalTest&) const = default;
};

struct Condition;

// Flattened: no option is itself an Alternative.
struct Alternative {
  std::vector<Condition> options;
  bool operator==(const Alternative& other) const;
};

// S-FEEL condition over a single kind.
struct Condition {
  using Node = std::variant<AnyValue, MatchTerm, NotTerm, Comparison, IntervalTest, Alternative>;

  Kind kind = Kind::Integer;
  Node node;

  bool is_any() const noexcept { return std::holds_alternative<AnyValue>(node); }
  bool operator==(const Condition& other) const { return kind == other.kind && node == other.node; }
};

inline bool Alternative::operator==(const Alternative& other) const { return options == other.options; }

// Ordered list of category literals for one string/boolean column. The k-th
// literal encodes to the half-open unit interval [k..k+1).
class CategoryList {
 public:
  CategoryList() = default;
  explicit CategoryList(Kind kind) : kind_(kind) {}

  Kind kind() const noexcept { return kind_; }
  const std::vector<Value>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  // Appends `v` unless already present; returns its code.
  std::int64_t add(const Value& v);
  std::optional<std::int64_t> code(const Value& v) const;
  const Value& decode(std::int64_t code) const { return values_.at(static_cast<std::size_t>(code)); }

  Interval1D encode(std::int64_t code) const;
  Interval1D encode(const Value& v) const;  // throws CodecError
  // Every category: [0..size).
  IntervalSet all() const;

  bool operator==(const CategoryList&) const = default;

 private:
  Kind kind_ = Kind::String;
  std::vector<Value> values_;
};

Condition parse_condition(std::string_view text, Kind kind);

// Parses a single literal (optionally an arithmetic term) and folds it.
Value parse_literal(std::string_view text, Kind kind);

// Constant-folds the arithmetic. Inexact integer division is a TypeError;
// division by zero and integer overflow are EvalErrors.
Value fold_term(const Term& term);

// The condition formula evaluated at `value`.
bool satisfies(const Condition& cond, const Value& value);

// {x | cond holds at x}. Numeric kinds map to themselves; categorical kinds
// require `codec`, and `-` / not(...) range over the codec's categories.
IntervalSet lower_to_intervals(const Condition& cond, const CategoryList* codec = nullptr);

Axis axis_for(Kind kind);

// Numeric literal as an axis coordinate.
Coord to_coord(const Value& v);

std::string render(const Term& term);
std::string render(const Condition& cond);

// Every literal mentioned by the condition, in order of appearance.
std::vector<Value> literals_of(const Condition& cond);

}  // namespace dmn
