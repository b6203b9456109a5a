#include "dmn/sfeel.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "dmn/errors.hpp"

namespace dmn {

Term Term::apply(ArithOp op, Term lhs, Term rhs) {
  Term t;
  t.op = op;
  t.args.push_back(std::move(lhs));
  t.args.push_back(std::move(rhs));
  return t;
}

// ---------------------------------------------------------------------------
// Category codes

std::int64_t CategoryList::add(const Value& v) {
  if (auto c = code(v)) return *c;
  values_.push_back(v);
  return static_cast<std::int64_t>(values_.size() - 1);
}

std::optional<std::int64_t> CategoryList::code(const Value& v) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == v) return static_cast<std::int64_t>(i);
  }
  return std::nullopt;
}

Interval1D CategoryList::encode(std::int64_t code) const {
  return {{Coord(static_cast<double>(code)), true}, {Coord(static_cast<double>(code + 1)), false}};
}

Interval1D CategoryList::encode(const Value& v) const {
  auto c = code(v);
  if (!c) throw CodecError("category '" + render_value(v) + "' is not known to the column codec");
  return encode(*c);
}

IntervalSet CategoryList::all() const {
  if (values_.empty()) return IntervalSet(Axis::Continuous);
  return IntervalSet(Axis::Continuous,
                     {{{Coord(0.0), true}, {Coord(static_cast<double>(values_.size())), false}}});
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  End, Comma, LBracket, RBracket, LParen, RParen, DotDot,
  Less, LessEq, Greater, GreaterEq, Plus, Minus, Star, Slash,
  Number, Quoted, Word,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_word_char(char c) { return is_word_start(c) || is_digit(c); }

class Lexer {
 public:
  Lexer(std::string_view src, bool categorical) : src_(src), categorical_(categorical) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back({Tok::End, "", src_.size()});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(src_) + "'");
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_).substr(0, s.size()) == s; }

  Token simple(Tok kind, std::size_t len) {
    Token t{kind, std::string(src_.substr(pos_, len)), pos_};
    pos_ += len;
    return t;
  }

  Token next() {
    const char c = src_[pos_];
    switch (c) {
      case ',': return simple(Tok::Comma, 1);
      case '[': return simple(Tok::LBracket, 1);
      case ']': return simple(Tok::RBracket, 1);
      case '(': return simple(Tok::LParen, 1);
      case ')': return simple(Tok::RParen, 1);
      case '"': return quoted();
      case '<': return starts_with("<=") ? simple(Tok::LessEq, 2) : simple(Tok::Less, 1);
      case '>': return starts_with(">=") ? simple(Tok::GreaterEq, 2) : simple(Tok::Greater, 1);
      default: break;
    }
    if (starts_with("≤")) return simple(Tok::LessEq, std::string_view("≤").size());
    if (starts_with("≥")) return simple(Tok::GreaterEq, std::string_view("≥").size());
    if (categorical_) return bare_word();

    switch (c) {
      case '+': return simple(Tok::Plus, 1);
      case '-': return simple(Tok::Minus, 1);
      case '*': return simple(Tok::Star, 1);
      case '/': return simple(Tok::Slash, 1);
      case '.':
        if (starts_with("..")) return simple(Tok::DotDot, 2);
        fail("stray '.'");
      default: break;
    }
    if (starts_with("·")) return simple(Tok::Star, std::string_view("·").size());
    if (starts_with("÷")) return simple(Tok::Slash, std::string_view("÷").size());
    if (is_digit(c)) return number();
    if (is_word_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && is_word_char(src_[pos_])) ++pos_;
      return {Tok::Word, std::string(src_.substr(start, pos_ - start)), start};
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Token number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' && is_digit(src_[pos_ + 1])) {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        pos_ = p;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    return {Tok::Number, std::string(src_.substr(start, pos_ - start)), start};
  }

  Token quoted() {
    const std::size_t start = pos_++;
    std::string text;
    while (true) {
      if (pos_ >= src_.size()) fail("unterminated string");
      const char c = src_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= src_.size()) fail("dangling escape");
        text.push_back(src_[pos_++]);
        continue;
      }
      text.push_back(c);
    }
    return {Tok::Quoted, std::move(text), start};
  }

  // Unquoted category literal: everything up to a delimiter, trimmed.
  Token bare_word() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == '"') break;
      ++pos_;
    }
    std::size_t end = pos_;
    while (end > start && is_space(src_[end - 1])) --end;
    std::string text(src_.substr(start, end - start));
    if (text == "-") return {Tok::Minus, text, start};
    return {Tok::Word, std::move(text), start};
  }

  std::string_view src_;
  bool categorical_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view src, Kind kind)
      : src_(src), kind_(kind), toks_(Lexer(src, is_categorical(kind)).run()) {}

  Condition condition() {
    std::vector<Condition> options;
    options.push_back(member());
    while (peek().kind == Tok::Comma) {
      ++pos_;
      options.push_back(member());
    }
    expect(Tok::End, "end of condition");
    if (options.size() == 1) return std::move(options.front());
    Alternative alt;
    for (auto& o : options) {
      if (auto* nested = std::get_if<Alternative>(&o.node)) {
        for (auto& inner : nested->options) alt.options.push_back(std::move(inner));
      } else {
        alt.options.push_back(std::move(o));
      }
    }
    return wrap(std::move(alt));
  }

  Term lone_term() {
    Term t = is_categorical(kind_) ? Term::of(category()) : additive();
    expect(Tok::End, "end of literal");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " at offset " + std::to_string(peek().pos) + " in '" + std::string(src_) + "'");
  }
  [[noreturn]] void kind_mismatch(const std::string& what) const {
    throw TypeError(what + " is not valid for a " + std::string(kind_name(kind_)) + " column in '" +
                    std::string(src_) + "'");
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }

  Condition wrap(Condition::Node node) const { return Condition{kind_, std::move(node)}; }

  bool at_member_end(std::size_t ahead) const {
    const Tok k = peek(ahead).kind;
    return k == Tok::Comma || k == Tok::End;
  }

  Condition member() {
    if (peek().kind == Tok::Minus && at_member_end(1)) {
      ++pos_;
      return wrap(AnyValue{});
    }
    const bool negation = peek().kind == Tok::Word && peek().text == "not" && peek(1).kind == Tok::LParen;
    if (is_categorical(kind_)) {
      if (negation) {
        pos_ += 2;
        Value v = category();
        expect(Tok::RParen, "')'");
        return wrap(NotTerm{Term::of(std::move(v))});
      }
      switch (peek().kind) {
        case Tok::Less: case Tok::LessEq: case Tok::Greater: case Tok::GreaterEq:
          kind_mismatch("a comparison");
        case Tok::LBracket: case Tok::RBracket: case Tok::LParen:
          kind_mismatch("an interval");
        default:
          return wrap(MatchTerm{Term::of(category())});
      }
    }

    if (negation) {
      pos_ += 2;
      Term t = additive();
      expect(Tok::RParen, "')'");
      return wrap(NotTerm{std::move(t)});
    }
    switch (peek().kind) {
      case Tok::Less: ++pos_; return wrap(Comparison{CompareOp::Less, additive()});
      case Tok::LessEq: ++pos_; return wrap(Comparison{CompareOp::LessEq, additive()});
      case Tok::Greater: ++pos_; return wrap(Comparison{CompareOp::Greater, additive()});
      case Tok::GreaterEq: ++pos_; return wrap(Comparison{CompareOp::GreaterEq, additive()});
      case Tok::LBracket: ++pos_; return interval_rest(true, additive());
      case Tok::RBracket: ++pos_; return interval_rest(false, additive());
      case Tok::LParen: {
        ++pos_;
        Term first = additive();
        if (peek().kind == Tok::DotDot) return interval_rest(false, std::move(first));
        expect(Tok::RParen, "')' or '..'");
        return wrap(MatchTerm{additive_tail(multiplicative_tail(std::move(first)))});
      }
      default:
        return wrap(MatchTerm{additive()});
    }
  }

  Condition interval_rest(bool lo_closed, Term lo) {
    expect(Tok::DotDot, "'..'");
    Term hi = additive();
    bool hi_closed = false;
    switch (peek().kind) {
      case Tok::RBracket: hi_closed = true; break;
      case Tok::RParen: case Tok::LBracket: hi_closed = false; break;
      default: fail("expected ']' or ')'");
    }
    ++pos_;
    return wrap(IntervalTest{lo_closed, std::move(lo), std::move(hi), hi_closed});
  }

  Value category() {
    const Token& t = peek();
    if (t.kind != Tok::Word && t.kind != Tok::Quoted) fail("expected a literal");
    ++pos_;
    if (kind_ == Kind::String) return Value(t.text);
    if (t.kind == Tok::Word && (t.text == "true" || t.text == "false")) return Value(t.text == "true");
    kind_mismatch("literal '" + t.text + "'");
  }

  Term additive() { return additive_tail(multiplicative()); }

  Term additive_tail(Term lhs) {
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const ArithOp op = take().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      lhs = Term::apply(op, std::move(lhs), multiplicative());
    }
    return lhs;
  }

  Term multiplicative() { return multiplicative_tail(unary()); }

  Term multiplicative_tail(Term lhs) {
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const ArithOp op = take().kind == Tok::Star ? ArithOp::Mul : ArithOp::Div;
      lhs = Term::apply(op, std::move(lhs), unary());
    }
    return lhs;
  }

  Term unary() {
    if (peek().kind != Tok::Minus) return primary();
    ++pos_;
    if (peek().kind == Tok::Number) return Term::of(number("-" + take().text));
    const Value zero = kind_ == Kind::Integer ? Value(std::int64_t{0}) : Value(0.0);
    return Term::apply(ArithOp::Sub, Term::of(zero), unary());
  }

  Term primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: ++pos_; return Term::of(number(t.text));
      case Tok::LParen: {
        ++pos_;
        Term inner = additive();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Word:
      case Tok::Quoted:
        kind_mismatch("literal '" + t.text + "'");
      default:
        fail("expected a term");
    }
  }

  Value number(const std::string& text) const {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (kind_ == Kind::Integer) {
      if (text.find_first_of(".eE") != std::string::npos) kind_mismatch("real literal '" + text + "'");
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last) fail("integer literal out of range");
      return Value(v);
    }
    double d = 0.0;
    auto [p, ec] = std::from_chars(first, last, d);
    if (ec != std::errc() || p != last || !std::isfinite(d)) fail("real literal out of range");
    return Value(d);
  }

  std::string_view src_;
  Kind kind_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void check_terms(const Condition& c) {
  std::visit(
      [](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, MatchTerm> || std::is_same_v<N, NotTerm> ||
                      std::is_same_v<N, Comparison>) {
          (void)fold_term(n.term);
        } else if constexpr (std::is_same_v<N, IntervalTest>) {
          (void)fold_term(n.lo);
          (void)fold_term(n.hi);
        } else if constexpr (std::is_same_v<N, Alternative>) {
          for (const auto& o : n.options) check_terms(o);
        }
      },
      c.node);
}

}  // namespace

Condition parse_condition(std::string_view text, Kind kind) {
  Condition c = Parser(text, kind).condition();
  check_terms(c);
  return c;
}

Value parse_literal(std::string_view text, Kind kind) { return fold_term(Parser(text, kind).lone_term()); }

// ---------------------------------------------------------------------------
// Folding and evaluation

namespace {

Value fold_int(ArithOp op, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  bool overflow = false;
  switch (op) {
    case ArithOp::Add: overflow = __builtin_add_overflow(a, b, &r); break;
    case ArithOp::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
    case ArithOp::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
    case ArithOp::Div:
      if (b == 0) throw EvalError("division by zero");
      if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
        overflow = true;
        break;
      }
      if (a % b != 0) {
        throw TypeError("division " + std::to_string(a) + " / " + std::to_string(b) +
                        " is not an integer");
      }
      r = a / b;
      break;
  }
  if (overflow) throw EvalError("integer overflow");
  return Value(r);
}

Value fold_real(ArithOp op, double a, double b) {
  double r = 0.0;
  switch (op) {
    case ArithOp::Add: r = a + b; break;
    case ArithOp::Sub: r = a - b; break;
    case ArithOp::Mul: r = a * b; break;
    case ArithOp::Div:
      if (b == 0.0) throw EvalError("division by zero");
      r = a / b;
      break;
  }
  if (!std::isfinite(r)) throw EvalError("real overflow");
  return Value(r);
}

// -1, 0, 1 for numeric values of the same kind.
int compare_numeric(const Value& a, const Value& b) {
  if (a.kind() == Kind::Integer) return a.as_int() < b.as_int() ? -1 : (b.as_int() < a.as_int() ? 1 : 0);
  return a.as_real() < b.as_real() ? -1 : (b.as_real() < a.as_real() ? 1 : 0);
}

}  // namespace

Value fold_term(const Term& term) {
  if (term.is_literal()) return term.literal;
  const Value a = fold_term(term.args.at(0));
  const Value b = fold_term(term.args.at(1));
  if (a.kind() != b.kind() || !is_numeric(a.kind())) {
    throw TypeError("arithmetic requires two operands of the same numeric kind");
  }
  if (a.kind() == Kind::Integer) return fold_int(*term.op, a.as_int(), b.as_int());
  return fold_real(*term.op, a.as_real(), b.as_real());
}

bool satisfies(const Condition& cond, const Value& value) {
  if (value.kind() != cond.kind) {
    throw TypeError("value of kind " + std::string(kind_name(value.kind())) + " tested against a " +
                    std::string(kind_name(cond.kind)) + " condition");
  }
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, AnyValue>) {
          return true;
        } else if constexpr (std::is_same_v<N, MatchTerm>) {
          return value == fold_term(n.term);
        } else if constexpr (std::is_same_v<N, NotTerm>) {
          return !(value == fold_term(n.term));
        } else if constexpr (std::is_same_v<N, Comparison>) {
          const int c = compare_numeric(value, fold_term(n.term));
          switch (n.op) {
            case CompareOp::Less: return c < 0;
            case CompareOp::Greater: return c > 0;
            case CompareOp::LessEq: return c <= 0;
            case CompareOp::GreaterEq: return c >= 0;
          }
          return false;
        } else if constexpr (std::is_same_v<N, IntervalTest>) {
          const int lo = compare_numeric(value, fold_term(n.lo));
          const int hi = compare_numeric(value, fold_term(n.hi));
          return (n.lo_closed ? lo >= 0 : lo > 0) && (n.hi_closed ? hi <= 0 : hi < 0);
        } else {
          for (const auto& o : n.options) {
            if (satisfies(o, value)) return true;
          }
          return false;
        }
      },
      cond.node);
}

Axis axis_for(Kind kind) { return kind == Kind::Integer ? Axis::Discrete : Axis::Continuous; }

Coord to_coord(const Value& v) {
  switch (v.kind()) {
    case Kind::Integer: return Coord(v.as_int());
    case Kind::Real: return Coord(v.as_real());
    default: throw TypeError("only numeric values have a coordinate");
  }
}

IntervalSet lower_to_intervals(const Condition& cond, const CategoryList* codec) {
  const Axis axis = axis_for(cond.kind);
  if (is_categorical(cond.kind)) {
    if (codec == nullptr) throw CodecError("categorical condition lowered without a codec");
    if (codec->kind() != cond.kind) throw TypeError("codec kind does not match the condition kind");
    return std::visit(
        [&](const auto& n) -> IntervalSet {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, AnyValue>) {
            return codec->all();
          } else if constexpr (std::is_same_v<N, MatchTerm>) {
            return IntervalSet(axis, {codec->encode(fold_term(n.term))});
          } else if constexpr (std::is_same_v<N, NotTerm>) {
            return codec->all().intersect(IntervalSet(axis, {codec->encode(fold_term(n.term))}).complement());
          } else if constexpr (std::is_same_v<N, Alternative>) {
            IntervalSet acc(axis);
            for (const auto& o : n.options) acc = acc.unite(lower_to_intervals(o, codec));
            return acc;
          } else {
            throw TypeError("comparison or interval over a categorical kind");
          }
        },
        cond.node);
  }

  return std::visit(
      [&](const auto& n) -> IntervalSet {
        using N = std::decay_t<decltype(n)>;
        const Coord ninf = Coord::neg_inf();
        const Coord pinf = Coord::pos_inf();
        if constexpr (std::is_same_v<N, AnyValue>) {
          return IntervalSet::full(axis);
        } else if constexpr (std::is_same_v<N, MatchTerm>) {
          return IntervalSet(axis, {Interval1D::point(to_coord(fold_term(n.term)))});
        } else if constexpr (std::is_same_v<N, NotTerm>) {
          const Coord t = to_coord(fold_term(n.term));
          return IntervalSet(axis, {{{ninf, false}, {t, false}}, {{t, false}, {pinf, false}}});
        } else if constexpr (std::is_same_v<N, Comparison>) {
          const Coord t = to_coord(fold_term(n.term));
          switch (n.op) {
            case CompareOp::Less: return IntervalSet(axis, {{{ninf, false}, {t, false}}});
            case CompareOp::LessEq: return IntervalSet(axis, {{{ninf, false}, {t, true}}});
            case CompareOp::Greater: return IntervalSet(axis, {{{t, false}, {pinf, false}}});
            case CompareOp::GreaterEq: return IntervalSet(axis, {{{t, true}, {pinf, false}}});
          }
          return IntervalSet(axis);
        } else if constexpr (std::is_same_v<N, IntervalTest>) {
          return IntervalSet(axis, {{{to_coord(fold_term(n.lo)), n.lo_closed},
                                     {to_coord(fold_term(n.hi)), n.hi_closed}}});
        } else {
          IntervalSet acc(axis);
          for (const auto& o : n.options) acc = acc.unite(lower_to_intervals(o, codec));
          return acc;
        }
      },
      cond.node);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

const char* op_text(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return " + ";
    case ArithOp::Sub: return " - ";
    case ArithOp::Mul: return " * ";
    case ArithOp::Div: return " / ";
  }
  return " ? ";
}

std::string render_operand(const Term& t) { return t.is_literal() ? render(t) : "(" + render(t) + ")"; }

}  // namespace

std::string render(const Term& term) {
  if (term.is_literal()) return render_value(term.literal);
  return render_operand(term.args.at(0)) + op_text(*term.op) + render_operand(term.args.at(1));
}

std::string render(const Condition& cond) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, AnyValue>) {
          return "-";
        } else if constexpr (std::is_same_v<N, MatchTerm>) {
          return render(n.term);
        } else if constexpr (std::is_same_v<N, NotTerm>) {
          return "not(" + render(n.term) + ")";
        } else if constexpr (std::is_same_v<N, Comparison>) {
          static constexpr const char* kOps[] = {"<", ">", "<=", ">="};
          return kOps[static_cast<int>(n.op)] + render(n.term);
        } else if constexpr (std::is_same_v<N, IntervalTest>) {
          return std::string(n.lo_closed ? "[" : "(") + render(n.lo) + ".." + render(n.hi) +
                 (n.hi_closed ? "]" : ")");
        } else {
          std::string out;
          for (const auto& o : n.options) {
            if (!out.empty()) out += ",";
            out += render(o);
          }
          return out;
        }
      },
      cond.node);
}

namespace {

void collect_literals(const Term& t, std::vector<Value>& out) {
  if (t.is_literal()) {
    out.push_back(t.literal);
    return;
  }
  for (const auto& a : t.args) collect_literals(a, out);
}

}  // namespace

std::vector<Value> literals_of(const Condition& cond) {
  std::vector<Value> out;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, MatchTerm> || std::is_same_v<N, NotTerm> ||
                      std::is_same_v<N, Comparison>) {
          collect_literals(n.term, out);
        } else if constexpr (std::is_same_v<N, IntervalTest>) {
          collect_literals(n.lo, out);
          collect_literals(n.hi, out);
        } else if constexpr (std::is_same_v<N, Alternative>) {
          for (const auto& o : n.options) {
            auto inner = literals_of(o);
            out.insert(out.end(), inner.begin(), inner.end());
          }
        }
      },
      cond.node);
  return out;
}

}  // namespace dmn
