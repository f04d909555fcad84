#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loewy {

struct CnfTerm;

/// An ordinal below epsilon_0 in Cantor normal form,
///   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,   e1 > e2 > ... > ek,  ci > 0.
/// The empty term list is 0. Structural equality is ordinal equality.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  /// w^exponent * coefficient (0 when coefficient is 0).
  static Ordinal omega_power(const Ordinal& exponent, std::uint64_t coefficient = 1);

  /// Parses `w` notation: `0`, `7`, `w`, `w*2+3`, `w^2*3+w+4`, `w^(w+1)`, `w^w`.
  /// Sums are normalised, so `1+w` parses to `w`.
  static Ordinal parse(std::string_view text);

  const std::vector<CnfTerm>& terms() const noexcept;

  bool is_zero() const noexcept { return rep_ == nullptr; }
  bool is_finite() const noexcept;
  bool is_successor() const noexcept;
  bool is_limit() const noexcept;
  std::optional<std::uint64_t> to_finite() const noexcept;

  /// The ordinal b with b + 1 == *this. Requires is_successor().
  Ordinal predecessor() const;
  /// Exponent of the leading term; 0 for the zero ordinal.
  Ordinal leading_exponent() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  explicit Ordinal(std::vector<CnfTerm> terms);
  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);

  // Immutable and shared between copies; null for 0.
  std::shared_ptr<const std::vector<CnfTerm>> rep_;
};

struct CnfTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 0;
};

/// Ordinal (left-absorbing, non-commutative) sum.
Ordinal operator+(const Ordinal& a, const Ordinal& b);

inline std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }
inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) { return a + b; }

enum class OrdinalKind { Zero, Successor, Limit };

struct OrdinalClass {
  OrdinalKind kind;
  std::optional<Ordinal> predecessor;  // engaged iff kind == Successor
};

OrdinalClass ord_classify(const Ordinal& a);

/// Ordinals below `bound` and at most `cap` whose CNF has at most two terms,
/// every coefficient at most `max_coeff`, and every exponent drawn
/// recursively from the same family. Sorted increasingly. Used to pick
/// finite samples of coordinates at limit levels.
std::vector<Ordinal> small_ordinals_below(const Ordinal& bound, std::uint64_t max_coeff,
                                          const Ordinal& cap);

}  // namespace loewy
