#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loewy/algebra.hpp"

namespace loewy {

/// Element of the Frobenius-twisted algebra R = I + nu(K) inside K^N, where
/// K has characteristic p, I is the socle (finitely supported sequences) and
/// nu(k) is the constant sequence k^p. Stored as finitely many deviations
/// plus the parameter k; the value at coordinate t is deviation(t) + k^p.
class TwistedElement {
 public:
  using Entry = std::pair<std::uint64_t, FieldValue>;

  /// Throws UnsupportedField unless `f` has positive characteristic.
  static TwistedElement zero(const FieldDescriptor& f);
  static TwistedElement one(const FieldDescriptor& f);
  /// nu(k): no deviations.
  static TwistedElement nu(const FieldValue& k);
  /// Sorts, drops zero deviations, rejects duplicates and foreign fields.
  static TwistedElement make(std::vector<Entry> deviations, const FieldValue& nu_param);

  /// `{0: x^2, 3: 1; nu(x)}`; `{; nu(0)}` is zero.
  static TwistedElement parse(const FieldDescriptor& f, std::string_view text);
  std::string to_string() const;

  const FieldDescriptor& field() const noexcept { return nu_.field(); }
  const std::vector<Entry>& deviations() const noexcept { return devs_; }
  const FieldValue& nu_param() const noexcept { return nu_; }
  bool is_zero() const noexcept { return devs_.empty() && nu_.is_zero(); }

  /// Value of the sequence at coordinate t.
  FieldValue value_at(std::uint64_t t) const;
  /// The same sequence as a level-1 element of B(1,1) (constant tail k^p).
  Element to_generic() const;

  friend bool operator==(const TwistedElement&, const TwistedElement&) = default;

 private:
  TwistedElement(std::vector<Entry> devs, FieldValue nu) : devs_(std::move(devs)), nu_(std::move(nu)) {}

  std::vector<Entry> devs_;
  FieldValue nu_;
};

TwistedElement operator+(const TwistedElement& a, const TwistedElement& b);
TwistedElement operator-(const TwistedElement& a);
TwistedElement operator-(const TwistedElement& a, const TwistedElement& b);
TwistedElement operator*(const TwistedElement& a, const TwistedElement& b);

inline TwistedElement t_add(const TwistedElement& a, const TwistedElement& b) { return a + b; }
inline TwistedElement t_neg(const TwistedElement& a) { return -a; }
inline TwistedElement t_mul(const TwistedElement& a, const TwistedElement& b) { return a * b; }

TwistedElement t_quasi_inverse(const TwistedElement& a);

/// Whether a level-1 sequence lies in R: its constant tail must be a p-th power.
bool t_membership(const Element& generic);
/// The element of R denoting `generic`, when t_membership holds.
std::optional<TwistedElement> from_generic(const Element& generic);

/// psi: B(1,1) -> R, coordinatewise Frobenius. Deviations d map to d^p and
/// the tail parameter is kept, since (d + c)^p - c^p = d^p.
TwistedElement psi_embed(const Element& x);
/// psi^-1 on its image: needs every deviation to be a p-th power.
std::optional<Element> psi_preimage(const TwistedElement& t);

DimensionSequence t_dimension_sequence(const FieldDescriptor& f);

/// Deviations on 0..max_coord with probability 1/2 each; nu parameter zero
/// with probability 1/3.
TwistedElement random_twisted(const FieldDescriptor& f, Rng& rng, std::uint64_t max_coord = 3);

}  // namespace loewy
