#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "loewy/poly.hpp"
#include "loewy/random.hpp"

namespace loewy {

enum class FieldKind { Rationals, PrimeField, RationalFunctions };

/// Which exact field K the scalars live in: Q, F_p, or F_p(x).
class FieldDescriptor {
 public:
  static FieldDescriptor rationals();
  static FieldDescriptor prime(std::uint64_t p);
  static FieldDescriptor rational_functions(std::uint64_t p);

  /// `q`, `f<p>` (e.g. `f5`) or `f<p>(x)` (e.g. `f2(x)`).
  static FieldDescriptor parse(std::string_view text);

  FieldKind kind() const noexcept { return kind_; }
  /// 0 for Q.
  std::uint64_t characteristic() const noexcept { return p_; }
  std::string to_string() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

 private:
  FieldDescriptor(FieldKind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  FieldKind kind_ = FieldKind::Rationals;
  std::uint64_t p_ = 0;
};

/// Reduced fraction of polynomials over F_p with monic denominator.
struct RationalFunction {
  FpPoly num;
  FpPoly den;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

/// An exact scalar tagged with its field. Values are kept canonical, so
/// equality is structural.
class FieldValue {
 public:
  FieldValue() : FieldValue(FieldDescriptor::rationals(), mpq_class(0)) {}

  static FieldValue zero(const FieldDescriptor& f);
  static FieldValue one(const FieldDescriptor& f);
  static FieldValue from_int(const FieldDescriptor& f, long n);
  static FieldValue rational(const mpq_class& q);
  static FieldValue residue(std::uint64_t p, std::uint64_t r);
  static FieldValue fraction(std::uint64_t p, FpPoly num, FpPoly den);
  /// The generator x of F_p(x).
  static FieldValue variable(std::uint64_t p);

  /// Field literal: `-2/3` for Q, `4` for F_p (reduced mod p), and polynomial
  /// fraction text such as `(x^2+1)/(x)` or `x+1` for F_p(x).
  static FieldValue parse(const FieldDescriptor& f, std::string_view text);

  const FieldDescriptor& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  const mpq_class& as_rational() const { return std::get<mpq_class>(v_); }
  std::uint64_t as_residue() const { return std::get<std::uint64_t>(v_); }
  const RationalFunction& as_fraction() const { return std::get<RationalFunction>(v_); }

  /// Canonical literal, parseable by FieldValue::parse.
  std::string to_string() const;

  FieldValue operator+(const FieldValue& o) const;
  FieldValue operator-(const FieldValue& o) const;
  FieldValue operator-() const;
  FieldValue operator*(const FieldValue& o) const;
  FieldValue inverse() const;
  FieldValue pow(std::uint64_t e) const;

  FieldValue& operator+=(const FieldValue& o) { return *this = *this + o; }
  FieldValue& operator-=(const FieldValue& o) { return *this = *this - o; }
  FieldValue& operator*=(const FieldValue& o) { return *this = *this * o; }

  friend bool operator==(const FieldValue& a, const FieldValue& b);

 private:
  using Storage = std::variant<mpq_class, std::uint64_t, RationalFunction>;
  FieldValue(FieldDescriptor f, Storage v) : field_(f), v_(std::move(v)) {}
  void require_same(const FieldValue& o) const;

  FieldDescriptor field_;
  Storage v_;
};

inline FieldValue f_add(const FieldValue& a, const FieldValue& b) { return a + b; }
inline FieldValue f_mul(const FieldValue& a, const FieldValue& b) { return a * b; }
inline FieldValue f_neg(const FieldValue& a) { return -a; }
inline FieldValue f_inv(const FieldValue& a) { return a.inverse(); }

/// a^p. Throws UnsupportedField in characteristic 0.
FieldValue frobenius(const FieldValue& a);

/// b with b^p == a when it exists. For F_p(x) in reduced form this holds iff
/// every exponent carrying a nonzero coefficient in numerator and monic
/// denominator is divisible by p. Throws UnsupportedField in characteristic 0.
std::optional<FieldValue> pth_root(const FieldValue& a);

/// Small random scalar: numerators in [-9, 9] over denominators in [1, 5]
/// for Q; uniform residues for F_p; fractions of polynomials of degree at
/// most 2 for F_p(x).
FieldValue random_scalar(const FieldDescriptor& f, Rng& rng, bool nonzero = false);

}  // namespace loewy
