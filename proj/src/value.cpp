#include "dmn/value.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace dmn {

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::String: return "string";
    case Kind::Boolean: return "boolean";
    case Kind::Integer: return "integer";
    case Kind::Real: return "real";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view name) {
  if (name == "string") return Kind::String;
  if (name == "boolean") return Kind::Boolean;
  if (name == "integer") return Kind::Integer;
  if (name == "real") return Kind::Real;
  return std::nullopt;
}

std::string render_real(double d) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  return std::string(buf.data(), end);
}

namespace {

bool bare_string_ok(const std::string& s) {
  if (s.empty() || s == "-") return false;
  if (s.front() == ' ' || s.back() == ' ' || s.front() == '\t' || s.back() == '\t') return false;
  if (s.front() == '<' || s.front() == '>') return false;
  if (s.rfind("≤", 0) == 0 || s.rfind("≥", 0) == 0) return false;
  for (char c : s) {
    switch (c) {
      case ',': case '(': case ')': case '[': case ']': case '"': case '\\': case '\n': case '\r':
        return false;
      default:
        break;
    }
  }
  return true;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string render_value(const Value& v) {
  switch (v.kind()) {
    case Kind::String: return bare_string_ok(v.as_string()) ? v.as_string() : quote(v.as_string());
    case Kind::Boolean: return v.as_bool() ? "true" : "false";
    case Kind::Integer: return std::to_string(v.as_int());
    case Kind::Real: return render_real(v.as_real());
  }
  return {};
}

}  // namespace dmn
