#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "loewy/algebra.hpp"

namespace loewy {

// Symbolic Baer-criterion checks over R(kappa, K) = B(1,1) indexed by kappa,
// against the modules M_lambda of sequences in K^kappa with support < lambda.

enum class CardKind : std::uint8_t { Fin, Aleph, Kappa, KappaPlus };

/// Fin(n) < Aleph(0) < Aleph(1) < ... < Kappa < KappaPlus. Every Aleph(k)
/// sits strictly below Kappa: kappa is taken larger than any aleph named.
struct SymbolicCardinal {
  CardKind kind = CardKind::Fin;
  std::uint64_t n = 0;  // Fin(n) or Aleph(n)

  static SymbolicCardinal fin(std::uint64_t n) { return {CardKind::Fin, n}; }
  static SymbolicCardinal aleph(std::uint64_t k) { return {CardKind::Aleph, k}; }
  static SymbolicCardinal kappa() { return {CardKind::Kappa, 0}; }
  static SymbolicCardinal kappa_plus() { return {CardKind::KappaPlus, 0}; }

  /// `fin:3`, `aleph:1`, `kappa`, `kappa+`.
  static SymbolicCardinal parse(std::string_view text);
  std::string to_string() const;
  bool is_infinite() const noexcept { return kind != CardKind::Fin; }

  friend bool operator==(const SymbolicCardinal&, const SymbolicCardinal&) = default;
  friend std::strong_ordering operator<=>(const SymbolicCardinal& a, const SymbolicCardinal& b);
};

inline std::strong_ordering card_cmp(const SymbolicCardinal& a, const SymbolicCardinal& b) { return a <=> b; }

/// A subset of kappa: an explicit finite set, or a named set of a given
/// infinite cardinality.
struct SymbolicSet {
  SymbolicCardinal cardinality;
  std::string tag;

  friend bool operator==(const SymbolicSet&, const SymbolicSet&) = default;
};

class SupportDescriptor {
 public:
  static SupportDescriptor explicit_finite(std::vector<std::uint64_t> coords);
  /// Throws BadCardinal unless aleph_0 <= c <= kappa.
  static SupportDescriptor symbolic(SymbolicCardinal c, std::string tag);

  bool is_explicit() const noexcept { return std::holds_alternative<std::vector<std::uint64_t>>(v_); }
  const std::vector<std::uint64_t>& coords() const { return std::get<std::vector<std::uint64_t>>(v_); }
  const SymbolicSet& set() const { return std::get<SymbolicSet>(v_); }
  SymbolicCardinal cardinality() const;
  std::string to_string() const;

  friend bool operator==(const SupportDescriptor&, const SupportDescriptor&) = default;

 private:
  explicit SupportDescriptor(std::variant<std::vector<std::uint64_t>, SymbolicSet> v) : v_(std::move(v)) {}
  std::variant<std::vector<std::uint64_t>, SymbolicSet> v_;
};

/// Element of K^kappa: finitely many explicit values, optionally plus the
/// value 1 on a symbolic set minus the explicit coordinates.
struct MElement {
  std::map<std::uint64_t, FieldValue> values;
  std::optional<SymbolicSet> indicator;

  static MElement explicit_values(std::map<std::uint64_t, FieldValue> v);
  SymbolicCardinal support_cardinality() const;
  std::string to_string() const;

  friend bool operator==(const MElement&, const MElement&) = default;
};

bool m_membership(const MElement& m, const SymbolicCardinal& lambda);

/// gamma(R) = kappa^+.
SymbolicCardinal gamma();

struct FinitelyGenerated {
  std::vector<Element> generators;
};
/// The socle sum of e_alpha R over alpha in the index set.
struct SocleDirectSum {
  SupportDescriptor index_set;
  FieldDescriptor field = FieldDescriptor::rationals();
};
using IdealDescriptor = std::variant<FinitelyGenerated, SocleDirectSum>;

struct Inclusion {};
/// e_alpha -> m_alpha.
struct FiniteTable {
  std::map<std::uint64_t, MElement> entries;
};
using HomDescriptor = std::variant<Inclusion, FiniteTable>;

struct Extends {
  MElement witness;
  std::string note;
};
struct Fails {
  SymbolicCardinal required;
  SymbolicCardinal allowed;
  std::string reason;
};
struct InvalidHomVerdict {
  std::optional<std::uint64_t> coordinate;
  std::string reason;
};
using Verdict = std::variant<Extends, Fails, InvalidHomVerdict>;

std::string verdict_name(const Verdict& v);
std::string verdict_to_string(const Verdict& v);
std::string ideal_to_string(const IdealDescriptor& ideal);
std::string hom_to_string(const HomDescriptor& hom);

/// Decides whether the hom from the ideal into M_lambda extends to R. An
/// Extends witness m satisfies m * e_alpha = phi(e_alpha) on every listed
/// alpha and lies in M_lambda; both are re-checked before returning.
/// Throws BadCardinal when lambda < aleph_0.
Verdict baer_extend(const SymbolicCardinal& lambda, const IdealDescriptor& ideal, const HomDescriptor& hom);

/// The ideal and hom showing M_lambda is not lambda^+-injective: the socle
/// sum over a set of cardinality lambda, with the inclusion. Requires
/// aleph_0 <= lambda <= kappa, else BadCardinal.
std::pair<IdealDescriptor, HomDescriptor> strictness_witness(const SymbolicCardinal& lambda);

}  // namespace loewy
