#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace loewy {

/// Dense univariate polynomial over the prime field F_p. Coefficients are
/// stored lowest degree first with no trailing zeros, so the zero
/// polynomial has no coefficients and equality is structural.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  static FpPoly constant(std::uint64_t p, std::uint64_t c);
  static FpPoly monomial(std::uint64_t p, std::uint64_t c, std::size_t degree);

  std::uint64_t modulus() const noexcept { return p_; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  std::uint64_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  std::uint64_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator-() const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scaled(std::uint64_t k) const;

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& divisor) const;
  FpPoly monic() const;

  /// Text in the variable `var`, e.g. `2*x^3+x+1`; the zero polynomial is `0`.
  std::string to_string(char var = 'x') const;

  friend bool operator==(const FpPoly&, const FpPoly&) = default;
  friend auto operator<=>(const FpPoly&, const FpPoly&) = default;

 private:
  void trim();

  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

/// Monic greatest common divisor.
FpPoly gcd(FpPoly a, FpPoly b);

/// Arithmetic helpers modulo a prime below 2^31.
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree at most deg/2. Intended for the small degrees used here.
bool is_irreducible(const FpPoly& f);

}  // namespace loewy
