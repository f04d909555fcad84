#include "loewy/field.hpp"

#include <cctype>

#include "loewy/error.hpp"

namespace loewy {

FieldDescriptor FieldDescriptor::rationals() { return FieldDescriptor(FieldKind::Rationals, 0); }

FieldDescriptor FieldDescriptor::prime(std::uint64_t p) {
  if (!is_prime(p) || p >= (1ULL << 31)) {
    throw Error(ErrorKind::UnsupportedField, std::to_string(p) + " is not a supported prime");
  }
  return FieldDescriptor(FieldKind::PrimeField, p);
}

FieldDescriptor FieldDescriptor::rational_functions(std::uint64_t p) {
  if (!is_prime(p) || p >= (1ULL << 31)) {
    throw Error(ErrorKind::UnsupportedField, std::to_string(p) + " is not a supported prime");
  }
  return FieldDescriptor(FieldKind::RationalFunctions, p);
}

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.empty() || (text[0] != 'f' && text[0] != 'F')) {
    throw ParseError(0, "field: expected q, f<p> or f<p>(x), got '" + std::string(text) + "'");
  }
  std::size_t i = 1;
  std::uint64_t p = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    p = p * 10 + static_cast<std::uint64_t>(text[i] - '0');
    if (p > (1ULL << 32)) throw ParseError(i, "field: prime too large");
    ++i;
  }
  if (i == 1) throw ParseError(1, "field: missing characteristic");
  std::string_view rest = text.substr(i);
  if (rest.empty()) return prime(p);
  if (rest == "(x)") return rational_functions(p);
  throw ParseError(i, "field: unexpected suffix '" + std::string(rest) + "'");
}

std::string FieldDescriptor::to_string() const {
  switch (kind_) {
    case FieldKind::Rationals: return "q";
    case FieldKind::PrimeField: return "f" + std::to_string(p_);
    case FieldKind::RationalFunctions: return "f" + std::to_string(p_) + "(x)";
  }
  return "?";
}

namespace {

RationalFunction reduce(FpPoly num, FpPoly den) {
  const std::uint64_t p = den.modulus();
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) return {FpPoly(p, {}), FpPoly::constant(p, 1)};
  if (den.is_one()) return {std::move(num), std::move(den)};
  FpPoly g = gcd(num, den);
  if (!g.is_one()) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  std::uint64_t lead_inv = mod_inv(den.leading(), p);
  return {num.scaled(lead_inv), den.scaled(lead_inv)};
}

}  // namespace

FieldValue FieldValue::zero(const FieldDescriptor& f) { return from_int(f, 0); }
FieldValue FieldValue::one(const FieldDescriptor& f) { return from_int(f, 1); }

FieldValue FieldValue::from_int(const FieldDescriptor& f, long n) {
  switch (f.kind()) {
    case FieldKind::Rationals: return rational(mpq_class(n));
    case FieldKind::PrimeField: {
      auto p = static_cast<long>(f.characteristic());
      return residue(f.characteristic(), static_cast<std::uint64_t>(((n % p) + p) % p));
    }
    case FieldKind::RationalFunctions: {
      std::uint64_t p = f.characteristic();
      auto r = static_cast<std::uint64_t>(((n % static_cast<long>(p)) + static_cast<long>(p)) %
                                          static_cast<long>(p));
      return fraction(p, FpPoly::constant(p, r), FpPoly::constant(p, 1));
    }
  }
  return {};
}

FieldValue FieldValue::rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return FieldValue(FieldDescriptor::rationals(), std::move(c));
}

FieldValue FieldValue::residue(std::uint64_t p, std::uint64_t r) {
  return FieldValue(FieldDescriptor::prime(p), r % p);
}

FieldValue FieldValue::fraction(std::uint64_t p, FpPoly num, FpPoly den) {
  return FieldValue(FieldDescriptor::rational_functions(p), reduce(std::move(num), std::move(den)));
}

FieldValue FieldValue::variable(std::uint64_t p) {
  return fraction(p, FpPoly::monomial(p, 1, 1), FpPoly::constant(p, 1));
}

bool FieldValue::is_zero() const noexcept {
  switch (v_.index()) {
    case 0: return sgn(std::get<0>(v_)) == 0;
    case 1: return std::get<1>(v_) == 0;
    default: return std::get<2>(v_).num.is_zero();
  }
}

bool FieldValue::is_one() const noexcept {
  switch (v_.index()) {
    case 0: return std::get<0>(v_) == 1;
    case 1: return std::get<1>(v_) == 1;
    default: {
      const auto& rf = std::get<2>(v_);
      return rf.num.is_one() && rf.den.is_one();
    }
  }
}

void FieldValue::require_same(const FieldValue& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorKind::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
  }
}

FieldValue FieldValue::operator+(const FieldValue& o) const {
  require_same(o);
  switch (v_.index()) {
    case 0: return FieldValue(field_, mpq_class(std::get<0>(v_) + std::get<0>(o.v_)));
    case 1: {
      std::uint64_t p = field_.characteristic();
      return FieldValue(field_, (std::get<1>(v_) + std::get<1>(o.v_)) % p);
    }
    default: {
      const auto& a = std::get<2>(v_);
      const auto& b = std::get<2>(o.v_);
      if (a.num.is_zero()) return o;
      if (b.num.is_zero()) return *this;
      if (a.den == b.den) return FieldValue(field_, reduce(a.num + b.num, a.den));
      return FieldValue(field_, reduce(a.num * b.den + b.num * a.den, a.den * b.den));
    }
  }
}

FieldValue FieldValue::operator-() const {
  switch (v_.index()) {
    case 0: return FieldValue(field_, mpq_class(-std::get<0>(v_)));
    case 1: {
      std::uint64_t r = std::get<1>(v_);
      return FieldValue(field_, r == 0 ? 0 : field_.characteristic() - r);
    }
    default: {
      const auto& a = std::get<2>(v_);
      return FieldValue(field_, RationalFunction{-a.num, a.den});
    }
  }
}

FieldValue FieldValue::operator-(const FieldValue& o) const { return *this + (-o); }

FieldValue FieldValue::operator*(const FieldValue& o) const {
  require_same(o);
  switch (v_.index()) {
    case 0: return FieldValue(field_, mpq_class(std::get<0>(v_) * std::get<0>(o.v_)));
    case 1: return FieldValue(field_, mod_mul(std::get<1>(v_), std::get<1>(o.v_), field_.characteristic()));
    default: {
      const auto& a = std::get<2>(v_);
      const auto& b = std::get<2>(o.v_);
      if (a.num.is_zero() || b.num.is_zero()) return zero(field_);
      if (a.num.is_one() && a.den.is_one()) return o;
      if (b.num.is_one() && b.den.is_one()) return *this;
      return FieldValue(field_, reduce(a.num * b.num, a.den * b.den));
    }
  }
}

FieldValue FieldValue::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + field_.to_string());
  switch (v_.index()) {
    case 0: return FieldValue(field_, mpq_class(1 / std::get<0>(v_)));
    case 1: return FieldValue(field_, mod_inv(std::get<1>(v_), field_.characteristic()));
    default: {
      const auto& a = std::get<2>(v_);
      return FieldValue(field_, reduce(a.den, a.num));
    }
  }
}

FieldValue FieldValue::pow(std::uint64_t e) const {
  FieldValue result = one(field_);
  FieldValue base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

bool operator==(const FieldValue& a, const FieldValue& b) {
  return a.field_ == b.field_ && a.v_ == b.v_;
}

std::string FieldValue::to_string() const {
  switch (v_.index()) {
    case 0: return std::get<0>(v_).get_str();
    case 1: return std::to_string(std::get<1>(v_));
    default: {
      const auto& a = std::get<2>(v_);
      if (a.den.is_one()) return a.num.to_string();
      return "(" + a.num.to_string() + ")/(" + a.den.to_string() + ")";
    }
  }
}

namespace {

/// Recursive-descent evaluator for scalar literals. Grammar:
///   sum    := prod (('+' | '-') prod)*
///   prod   := unary (('*' | '/') unary | implicit-x-factor)*
///   unary  := '-' unary | atom ('^' natural)?
///   atom   := natural | 'x' | '(' sum ')'
class ScalarParser {
 public:
  ScalarParser(const FieldDescriptor& f, std::string_view src) : f_(f), src_(src) {}

  FieldValue parse_all() {
    FieldValue v = sum();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

 private:
  FieldValue sum() {
    FieldValue v = prod();
    while (true) {
      if (eat('+')) {
        v += prod();
      } else if (eat('-')) {
        v -= prod();
      } else {
        return v;
      }
    }
  }

  FieldValue prod() {
    FieldValue v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        FieldValue d = unary();
        if (d.is_zero()) throw ParseError(at, "scalar: division by zero");
        v *= d.inverse();
      } else if (peek() == 'x' || peek() == '(') {
        v *= unary();  // implicit multiplication, e.g. 2x or 3(x+1)
      } else {
        return v;
      }
    }
  }

  FieldValue unary() {
    if (eat('-')) return -unary();
    FieldValue v = atom();
    if (eat('^')) v = v.pow(natural());
    return v;
  }

  FieldValue atom() {
    skip_ws();
    if (eat('(')) {
      FieldValue v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (peek() == 'x') {
      if (f_.kind() != FieldKind::RationalFunctions) fail("'x' is only valid in F_p(x)");
      ++pos_;
      return FieldValue::variable(f_.characteristic());
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string digits(src_.substr(start, pos_ - start));
      if (f_.kind() == FieldKind::Rationals) return FieldValue::rational(mpq_class(digits));
      mpz_class n(digits);
      mpz_class r = n % mpz_class(static_cast<unsigned long>(f_.characteristic()));
      return FieldValue::from_int(f_, static_cast<long>(r.get_ui()));
    }
    fail("expected a number, 'x' or '('");
  }

  std::uint64_t natural() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    std::uint64_t e = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      e = e * 10 + static_cast<std::uint64_t>(src_[pos_++] - '0');
      if (e > 100000) fail("exponent too large");
    }
    return e;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, "scalar: " + msg); }

  FieldDescriptor f_;
  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldValue FieldValue::parse(const FieldDescriptor& f, std::string_view text) {
  return ScalarParser(f, text).parse_all();
}

FieldValue frobenius(const FieldValue& a) {
  const auto& f = a.field();
  if (f.kind() == FieldKind::Rationals) {
    throw Error(ErrorKind::UnsupportedField, "Frobenius needs positive characteristic");
  }
  if (f.kind() == FieldKind::PrimeField) return a;
  // (n/d)^p = n(x^p)/d(x^p) because coefficients in F_p are fixed by Frobenius.
  std::uint64_t p = f.characteristic();
  auto spread = [p](const FpPoly& poly) {
    std::vector<std::uint64_t> c(poly.coeffs().empty() ? 0 : (poly.coeffs().size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < poly.coeffs().size(); ++i) c[i * p] = poly.coeffs()[i];
    return FpPoly(p, std::move(c));
  };
  const auto& rf = a.as_fraction();
  return FieldValue::fraction(p, spread(rf.num), spread(rf.den));
}

std::optional<FieldValue> pth_root(const FieldValue& a) {
  const auto& f = a.field();
  if (f.kind() == FieldKind::Rationals) {
    throw Error(ErrorKind::UnsupportedField, "p-th roots need positive characteristic");
  }
  if (f.kind() == FieldKind::PrimeField) return a;
  std::uint64_t p = f.characteristic();
  auto shrink = [p](const FpPoly& poly) -> std::optional<FpPoly> {
    const auto& c = poly.coeffs();
    std::vector<std::uint64_t> out(c.empty() ? 0 : (c.size() - 1) / p + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (i % p != 0) return std::nullopt;
      out[i / p] = c[i];
    }
    return FpPoly(p, std::move(out));
  };
  const auto& rf = a.as_fraction();
  auto num = shrink(rf.num);
  auto den = shrink(rf.den);
  if (!num || !den) return std::nullopt;
  return FieldValue::fraction(p, *num, *den);
}

FieldValue random_scalar(const FieldDescriptor& f, Rng& rng, bool nonzero) {
  while (true) {
    FieldValue v;
    switch (f.kind()) {
      case FieldKind::Rationals:
        v = FieldValue::rational(mpq_class(rng.between(-9, 9), static_cast<unsigned long>(rng.between(1, 5))));
        break;
      case FieldKind::PrimeField:
        v = FieldValue::residue(f.characteristic(), rng.below(f.characteristic()));
        break;
      case FieldKind::RationalFunctions: {
        std::uint64_t p = f.characteristic();
        auto poly = [&](std::size_t max_deg, bool monic_nonzero) {
          std::size_t deg = rng.below(max_deg + 1);
          std::vector<std::uint64_t> c(deg + 1);
          for (auto& x : c) x = rng.below(p);
          if (monic_nonzero) c[deg] = 1;
          return FpPoly(p, std::move(c));
        };
        v = FieldValue::fraction(p, poly(2, false), poly(rng.chance(1, 2) ? 0 : 2, true));
        break;
      }
    }
    if (!nonzero || !v.is_zero()) return v;
  }
}

}  // namespace loewy
