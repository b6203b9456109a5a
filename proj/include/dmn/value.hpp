#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace dmn {

// The four supported S-FEEL data types. Only Integer and Real carry the
// comparison predicates and arithmetic functions.
enum class Kind : std::uint8_t { String, Boolean, Integer, Real };

std::string_view kind_name(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);

constexpr bool is_numeric(Kind kind) { return kind == Kind::Integer || kind == Kind::Real; }
constexpr bool is_categorical(Kind kind) { return !is_numeric(kind); }

// A literal object. Values carry their kind, so objects of distinct kinds
// never compare equal.
class Value {
 public:
  Value() : data_(std::int64_t{0}) {}
  explicit Value(std::string s) : data_(std::move(s)) {}
  explicit Value(const char* s) : data_(std::string(s)) {}
  explicit Value(bool b) : data_(b) {}
  explicit Value(std::int64_t i) : data_(i) {}
  explicit Value(int i) : data_(std::int64_t{i}) {}
  explicit Value(double d) : data_(d) {}

  Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }

  const std::string& as_string() const { return std::get<std::string>(data_); }
  bool as_bool() const { return std::get<bool>(data_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  double as_real() const { return std::get<double>(data_); }

  bool operator==(const Value&) const = default;

 private:
  std::variant<std::string, bool, std::int64_t, double> data_;
};

// Canonical S-FEEL text of a literal. Strings are written bare when that
// re-parses unambiguously and quoted otherwise.
std::string render_value(const Value& v);

// Shortest text that parses back to exactly `d`.
std::string render_real(double d);

}  // namespace dmn
