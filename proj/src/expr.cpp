#include "loewy/expr.hpp"

#include <cctype>
#include <set>
#include <variant>

#include "loewy/error.hpp"

namespace loewy {

ExprPtr Expr::make_scalar(FieldValue k) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Scalar;
  e->scalar = std::move(k);
  return e;
}

ExprPtr Expr::one() {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::One;
  return e;
}

ExprPtr Expr::zero() { return std::make_shared<Expr>(); }

ExprPtr Expr::basic(Ordinal coord) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Basic;
  e->coord = std::move(coord);
  return e;
}

ExprPtr Expr::basis(BasisIndex idx) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Basis;
  e->index = std::move(idx);
  return e;
}

ExprPtr Expr::literal(std::vector<std::pair<Ordinal, ExprPtr>> entries, FieldValue tail) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Literal;
  for (auto& [c, x] : entries) {
    e->coords.push_back(std::move(c));
    e->args.push_back(std::move(x));
  }
  e->scalar = std::move(tail);
  return e;
}

ExprPtr Expr::tuple(std::vector<ExprPtr> factors) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Tuple;
  e->args = std::move(factors);
  return e;
}

namespace {

ExprPtr node(ExprKind k, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = std::move(args);
  return e;
}

}  // namespace

ExprPtr Expr::add(ExprPtr a, ExprPtr b) { return node(ExprKind::Add, {std::move(a), std::move(b)}); }
ExprPtr Expr::mul(ExprPtr a, ExprPtr b) { return node(ExprKind::Mul, {std::move(a), std::move(b)}); }
ExprPtr Expr::neg(ExprPtr a) { return node(ExprKind::Neg, {std::move(a)}); }

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Scalar:
      return a.scalar == b.scalar;
    case ExprKind::One:
    case ExprKind::Zero:
      return true;
    case ExprKind::Basic:
      return a.coord == b.coord;
    case ExprKind::Basis:
      return a.index == b.index;
    case ExprKind::Literal:
      if (!(a.scalar == b.scalar) || a.coords != b.coords) return false;
      break;
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!expr_equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(const FieldDescriptor& f, std::string_view src) : f_(f), s_(src) {}

  ExprPtr run() {
    ExprPtr e = sum();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }
  bool word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  // Raw text up to the first `stop` outside parentheses; the stop is not consumed.
  std::pair<std::size_t, std::string_view> until(std::string_view stops) {
    skip();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (depth == 0 && stops.find(c) != std::string_view::npos) break;
      if (c == '(') ++depth;
      if (c == ')' && --depth < 0) break;
      ++pos_;
    }
    if (pos_ == s_.size()) throw ParseError(pos_, "unterminated form, expected one of \"" + std::string(stops) + "\"");
    std::string_view text = s_.substr(start, pos_ - start);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return {start, text};
  }

  template <class F>
  auto nested(std::size_t start, F&& f) {
    try {
      return f();
    } catch (const ParseError& e) {
      throw ParseError(start + e.position(), e.what());
    } catch (const Error& e) {
      throw ParseError(start, e.what());
    }
  }

  Ordinal coord(std::string_view stops) {
    auto [start, text] = until(stops);
    if (text.empty()) throw ParseError(start, "expected a coordinate");
    return nested(start, [&] { return Ordinal::parse(text); });
  }

  FieldValue field_literal(std::size_t start, std::string_view text) {
    if (text.empty()) throw ParseError(start, "expected a field literal");
    return nested(start, [&] { return FieldValue::parse(f_, text); });
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  ExprPtr sum() {
    ExprPtr e = prod();
    while (true) {
      if (peek('+')) {
        ++pos_;
        e = Expr::add(e, prod());
      } else if (peek('-')) {
        ++pos_;
        e = Expr::add(e, Expr::neg(prod()));
      } else {
        return e;
      }
    }
  }

  ExprPtr prod() {
    ExprPtr e = unary();
    while (peek('*')) {
      ++pos_;
      e = Expr::mul(e, unary());
    }
    return e;
  }

  ExprPtr unary() {
    if (peek('-')) {
      ++pos_;
      return Expr::neg(unary());
    }
    return atom();
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of expression");
    const std::size_t start = pos_;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      FieldValue num = field_literal(start, digits());
      if (peek('/')) {
        ++pos_;
        skip();
        std::size_t at = pos_;
        FieldValue den = field_literal(at, digits());
        if (den.is_zero()) throw ParseError(at, "zero denominator");
        return Expr::make_scalar(num * den.inverse());
      }
      return Expr::make_scalar(num);
    }
    if (c == '[') {
      ++pos_;
      auto [at, text] = until("]");
      ++pos_;
      return Expr::make_scalar(field_literal(at, text));
    }
    if (c == '<') {
      ++pos_;
      std::vector<ExprPtr> factors{sum()};
      while (peek(',')) {
        ++pos_;
        factors.push_back(sum());
      }
      expect('>');
      return Expr::tuple(std::move(factors));
    }
    if (c == '{') {
      ++pos_;
      std::vector<std::pair<Ordinal, ExprPtr>> entries;
      if (!peek(';')) {
        while (true) {
          Ordinal t = coord(":");
          ++pos_;
          entries.emplace_back(std::move(t), sum());
          if (peek(',')) {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect(';');
      auto [at, text] = until("}");
      ++pos_;
      return Expr::literal(std::move(entries), field_literal(at, text));
    }
    if (word("one")) return Expr::one();
    if (word("zero")) return Expr::zero();
    if (opener('e', '[')) {
      Ordinal t = coord("]");
      ++pos_;
      return Expr::basic(std::move(t));
    }
    if (opener('b', '(')) {
      auto [at, text] = until(")");
      ++pos_;
      return Expr::basis(nested(at, [&] { return BasisIndex::parse(text); }));
    }
    if (c == 'x' && f_.kind() == FieldKind::RationalFunctions) {
      ++pos_;
      std::string text = "x";
      if (peek('^')) {
        ++pos_;
        skip();
        text += "^" + digits();
      }
      return Expr::make_scalar(field_literal(start, text));
    }
    throw ParseError(start, std::string("unexpected '") + c + "'");
  }

  // `name` followed by `open`, both consumed on success.
  bool opener(char name, char open) {
    const std::size_t save = pos_;
    if (s_[pos_] == name) {
      ++pos_;
      if (peek(open)) {
        ++pos_;
        return true;
      }
    }
    pos_ = save;
    return false;
  }

  FieldDescriptor f_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const FieldDescriptor& f, std::string_view src) { return Parser(f, src).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string scalar_text(const FieldValue& k) {
  std::string s = k.to_string();
  auto slash = s.find('/');
  if (all_digits(s)) return s;
  if (slash != std::string::npos && all_digits(std::string_view(s).substr(0, slash)) &&
      all_digits(std::string_view(s).substr(slash + 1))) {
    return s;
  }
  if (k.field().kind() == FieldKind::RationalFunctions &&
      (s == "x" || (s.rfind("x^", 0) == 0 && all_digits(std::string_view(s).substr(2))))) {
    return s;
  }
  return "[" + s + "]";
}

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
      return 1;
    case ExprKind::Mul:
      return 2;
    case ExprKind::Neg:
      return 3;
    default:
      return 4;
  }
}

void print(const Expr& e, int min_prec, std::string& out) {
  const bool paren = precedence(e.kind) < min_prec;
  if (paren) out += '(';
  switch (e.kind) {
    case ExprKind::Scalar:
      out += scalar_text(e.scalar);
      break;
    case ExprKind::One:
      out += "one";
      break;
    case ExprKind::Zero:
      out += "zero";
      break;
    case ExprKind::Basic:
      out += "e[" + e.coord.to_string() + "]";
      break;
    case ExprKind::Basis:
      out += "b(" + e.index.to_string() + ")";
      break;
    case ExprKind::Literal:
      out += '{';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i != 0) out += ", ";
        out += e.coords[i].to_string() + ": ";
        print(*e.args[i], 1, out);
      }
      out += "; " + e.scalar.to_string() + "}";
      break;
    case ExprKind::Tuple:
      out += '<';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i != 0) out += ", ";
        print(*e.args[i], 1, out);
      }
      out += '>';
      break;
    case ExprKind::Add:
      print(*e.args[0], 1, out);
      out += " + ";
      print(*e.args[1], 2, out);
      break;
    case ExprKind::Mul:
      print(*e.args[0], 2, out);
      out += " * ";
      print(*e.args[1], 3, out);
      break;
    case ExprKind::Neg:
      out += '-';
      print(*e.args[0], 3, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print(e, 1, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// A scalar stands for k * 1 at whatever level it meets.
using Value = std::variant<FieldValue, Element, TupleElement>;

[[noreturn]] void type_error(const std::string& what) { throw Error(ErrorKind::Type, what); }

class Evaluator {
 public:
  explicit Evaluator(FieldDescriptor f) : f_(f) {}

  Value eval(const Ordinal& level, std::uint32_t width, const Expr& e) {
    switch (e.kind) {
      case ExprKind::Scalar:
        if (!(e.scalar.field() == f_)) {
          type_error("scalar " + e.scalar.to_string() + " is not in " + f_.to_string());
        }
        return e.scalar;
      case ExprKind::One:
        return FieldValue::one(f_);
      case ExprKind::Zero:
        return FieldValue::zero(f_);
      case ExprKind::Basic: {
        require_coord(level, e.coord);
        return inject(level, e.coord, Element::one(f_, component_level(level, e.coord)));
      }
      case ExprKind::Basis: {
        AlgebraDescriptor d(f_, level, width);
        try {
          validate_index(d, e.index);
        } catch (const Error& err) {
          type_error("b(" + e.index.to_string() + ") is not a basis index of " + d.to_string() + ": " + err.what());
        }
        TupleElement t = basis_element(d, e.index);
        if (width == 1) return t[0];
        return t;
      }
      case ExprKind::Literal: {
        if (level.is_zero()) type_error("literal {...} at level 0, where elements are scalars");
        std::vector<Deviation> devs;
        std::set<Ordinal> seen;
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          const Ordinal& t = e.coords[i];
          require_coord(level, t);
          if (!seen.insert(t).second) type_error("coordinate " + t.to_string() + " repeated in literal");
          Ordinal sub = component_level(level, t);
          devs.push_back({t, as_element(sub, eval(sub, 1, *e.args[i]))});
        }
        if (!(e.scalar.field() == f_)) type_error("literal tail is not in " + f_.to_string());
        return Element::make(level, std::move(devs), e.scalar);
      }
      case ExprKind::Tuple: {
        if (e.args.size() != width) {
          type_error("tuple of " + std::to_string(e.args.size()) + " factors where width is " +
                     std::to_string(width));
        }
        std::vector<Element> parts;
        for (const auto& a : e.args) parts.push_back(as_element(level, eval(level, 1, *a)));
        if (width == 1) return parts[0];
        return TupleElement(std::move(parts));
      }
      case ExprKind::Add:
      case ExprKind::Mul: {
        Value a = eval(level, width, *e.args[0]);
        Value b = eval(level, width, *e.args[1]);
        const bool add = e.kind == ExprKind::Add;
        if (std::holds_alternative<FieldValue>(a) && std::holds_alternative<FieldValue>(b)) {
          const auto& x = std::get<FieldValue>(a);
          const auto& y = std::get<FieldValue>(b);
          return add ? x + y : x * y;
        }
        if (width == 1) {
          Element x = as_element(level, a), y = as_element(level, b);
          return add ? x + y : x * y;
        }
        TupleElement x = as_tuple(level, width, a), y = as_tuple(level, width, b);
        return add ? x + y : x * y;
      }
      case ExprKind::Neg: {
        Value a = eval(level, width, *e.args[0]);
        return std::visit([](const auto& v) -> Value { return -v; }, a);
      }
    }
    type_error("unknown expression");
  }

  Element as_element(const Ordinal& level, const Value& v) {
    if (const auto* k = std::get_if<FieldValue>(&v)) return Element::constant(level, *k);
    if (const auto* x = std::get_if<Element>(&v)) {
      if (!(x->level() == level)) {
        type_error("element of level " + x->level().to_string() + " used at level " + level.to_string());
      }
      return *x;
    }
    type_error("a width-" + std::to_string(std::get<TupleElement>(v).width()) +
               " tuple used where an element of B(" + level.to_string() + ",1) is expected");
  }

  TupleElement as_tuple(const Ordinal& level, std::uint32_t width, const Value& v) {
    AlgebraDescriptor d(f_, level, width);
    if (const auto* k = std::get_if<FieldValue>(&v)) return TupleElement::embed_scalar(d, *k);
    if (const auto* t = std::get_if<TupleElement>(&v)) return *t;
    if (width == 1) return TupleElement({as_element(level, v)});
    type_error("an element of B(" + level.to_string() + ",1) used at width " + std::to_string(width) +
               "; give every factor inside <...>");
  }

 private:
  void require_coord(const Ordinal& level, const Ordinal& t) {
    if (!is_valid_coord(level, t)) {
      type_error("coordinate " + t.to_string() + " is not valid at level " + level.to_string());
    }
  }

  FieldDescriptor f_;
};

}  // namespace

TupleElement eval_expr(const AlgebraDescriptor& desc, const Expr& e) {
  Evaluator ev(desc.field);
  return ev.as_tuple(desc.level, desc.width, ev.eval(desc.level, desc.width, e));
}

// ---------------------------------------------------------------------------
// Random trees

namespace {

Ordinal random_coord(Rng& rng, bool nonzero) {
  static const char* const pool[] = {"0", "1", "2", "3", "5", "w", "w+1", "w*2", "w^2", "w^w", "w^(w+1)+3"};
  const std::size_t lo = nonzero ? 1 : 0;
  return Ordinal::parse(pool[lo + rng.below(std::size(pool) - lo)]);
}

BasisIndex random_index(Rng& rng) {
  std::vector<IndexStep> steps(rng.below(4));
  for (auto& s : steps) {
    switch (rng.below(4)) {
      case 0:
        s.kind = StepKind::C0;
        break;
      case 1:
        s.kind = StepKind::Mix;
        s.coord = random_coord(rng, true);
        break;
      case 2:
        s.kind = StepKind::Prod0;
        break;
      default:
        s.kind = StepKind::ProdMix;
        s.factor = 1 + static_cast<std::uint32_t>(rng.below(3));
        break;
    }
  }
  BasisIndex idx = BasisIndex::unit();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    switch (it->kind) {
      case StepKind::C0:
        idx = BasisIndex::c0(idx);
        break;
      case StepKind::Mix:
        idx = BasisIndex::mix(it->coord, idx);
        break;
      case StepKind::Prod0:
        idx = BasisIndex::prod0(idx);
        break;
      case StepKind::ProdMix:
        idx = BasisIndex::prod_mix(it->factor, idx);
        break;
    }
  }
  return idx;
}

}  // namespace

ExprPtr random_expr(const FieldDescriptor& f, Rng& rng, int depth) {
  if (depth <= 0 || rng.chance(1, 3)) {
    switch (rng.below(depth > 0 ? 7 : 5)) {
      case 0:
        return Expr::make_scalar(random_scalar(f, rng));
      case 1:
        return Expr::one();
      case 2:
        return Expr::zero();
      case 3:
        return Expr::basic(random_coord(rng, false));
      case 4:
        return Expr::basis(random_index(rng));
      case 5: {
        std::vector<std::pair<Ordinal, ExprPtr>> entries;
        const std::uint64_t n = rng.below(3);
        for (std::uint64_t i = 0; i < n; ++i) entries.emplace_back(random_coord(rng, false), random_expr(f, rng, depth - 1));
        return Expr::literal(std::move(entries), random_scalar(f, rng));
      }
      default: {
        std::vector<ExprPtr> factors(1 + rng.below(3));
        for (auto& x : factors) x = random_expr(f, rng, depth - 1);
        return Expr::tuple(std::move(factors));
      }
    }
  }
  switch (rng.below(3)) {
    case 0:
      return Expr::add(random_expr(f, rng, depth - 1), random_expr(f, rng, depth - 1));
    case 1:
      return Expr::mul(random_expr(f, rng, depth - 1), random_expr(f, rng, depth - 1));
    default:
      return Expr::neg(random_expr(f, rng, depth - 1));
  }
}

}  // namespace loewy
