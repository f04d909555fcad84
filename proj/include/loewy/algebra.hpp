#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loewy/field.hpp"
#include "loewy/ordinal.hpp"
#include "loewy/random.hpp"

namespace loewy {

/// B(level, width) over `field`: Loewy length level+1, top layer of
/// dimension `width`.
struct AlgebraDescriptor {
  AlgebraDescriptor(FieldDescriptor f, Ordinal lvl, std::uint32_t w = 1);

  FieldDescriptor field;
  Ordinal level;
  std::uint32_t width = 1;

  AlgebraDescriptor with_width(std::uint32_t w) const { return {field, level, w}; }
  std::string to_string() const;

  friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

/// Whether `coord` indexes a component of B(level, 1): any natural number
/// at successor levels, any ordinal below `level` at limit levels, nothing
/// at level 0.
bool is_valid_coord(const Ordinal& level, const Ordinal& coord);

/// Level of the component algebra sitting at `coord` of B(level, 1):
/// the predecessor at successor levels, `coord` itself at limit levels.
/// Throws LevelMismatch for an invalid coordinate.
Ordinal component_level(const Ordinal& level, const Ordinal& coord);

struct Deviation;

/// An element of B(level, 1), stored as finitely many deviations over a
/// constant tail. At coordinate t the element takes the value
/// deviation(t) + constant * 1 in the component algebra, and the value
/// constant * 1 at every coordinate without a deviation. Level-0 elements
/// are plain scalars. Deviations are nonzero and sorted by coordinate, so
/// equality is structural.
class Element {
 public:
  static Element zero(const FieldDescriptor& f, const Ordinal& level);
  static Element one(const FieldDescriptor& f, const Ordinal& level);
  static Element constant(const Ordinal& level, const FieldValue& k);
  static Element scalar(const FieldValue& k) { return constant(Ordinal{}, k); }

  /// Validating constructor. Sorts deviations, drops zero ones and rejects
  /// duplicates, invalid coordinates, level and field mismatches.
  static Element make(const Ordinal& level, std::vector<Deviation> deviations, const FieldValue& constant);

  const Ordinal& level() const noexcept { return level_; }
  const FieldDescriptor& field() const noexcept { return constant_.field(); }
  const FieldValue& constant() const noexcept { return constant_; }
  const std::vector<Deviation>& deviations() const noexcept;

  bool is_zero() const noexcept;
  /// Deviation stored at `coord`, or nullptr.
  const Element* deviation_at(const Ordinal& coord) const;
  /// Value of the element at `coord`, an element of the component algebra.
  Element value_at(const Ordinal& coord) const;

  /// Adds k * 1 (changes only the constant tail).
  Element plus_constant(const FieldValue& k) const;

  std::string to_string() const;

  friend bool operator==(const Element& a, const Element& b);

 private:
  friend struct ElementAccess;
  Element(Ordinal level, std::vector<Deviation> devs, FieldValue constant);
  Element(Ordinal level, std::shared_ptr<const std::vector<Deviation>> devs, FieldValue constant);

  Ordinal level_;
  // Immutable and shared between copies; null when there are no deviations.
  std::shared_ptr<const std::vector<Deviation>> devs_;
  FieldValue constant_;
};

struct Deviation {
  Ordinal coord;
  Element value;

  friend bool operator==(const Deviation&, const Deviation&) = default;
};

Element inject(const Ordinal& level, const Ordinal& coord, const Element& x);

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator-(const Element& x, const Element& y);
Element operator*(const Element& x, const Element& y);
Element operator*(const FieldValue& k, const Element& x);

inline Element e_add(const Element& x, const Element& y) { return x + y; }
inline Element e_neg(const Element& x) { return -x; }
inline Element e_mul(const Element& x, const Element& y) { return x * y; }
inline Element e_scalar_mul(const FieldValue& k, const Element& x) { return k * x; }

/// Reflexive quasi-inverse: x*s*x == x and s*x*s == s. Inverts the tail and,
/// recursively, every coordinate value (zero maps to zero).
Element quasi_inverse(const Element& x);

struct UnitIdempotentFactors {
  Element unit;
  Element idempotent;
  Element unit_inverse;
};

/// x = unit * idempotent with unit * unit_inverse = 1.
UnitIdempotentFactors unit_idempotent_factorization(const Element& x);

/// The delta with x in S_{delta+1} minus S_delta of the socle sequence;
/// nullopt for zero.
std::optional<Ordinal> loewy_depth(const Element& x);

struct PeeledComponent {
  Element component;
  Element rest;
};

/// Splits off coordinate `coord`. At successor levels later coordinates
/// shift down by one so `rest` lives in the same algebra; at limit levels
/// `rest` simply forgets the coordinate.
PeeledComponent peel_component(const Element& x, const Ordinal& coord);

// Swallow isomorphisms B(beta,1) x B(alpha,1) -> B(alpha,1) for beta < alpha.

/// alpha = beta + 1: x goes to coordinate 0, y's coordinates shift up by one.
Element swallow_succ_forward(const Element& x, const Element& y);
std::pair<Element, Element> swallow_succ_backward(const Ordinal& beta, const Element& z);

/// alpha a limit: the component at coordinate beta+1 absorbs x through the
/// successor isomorphism.
Element swallow_limit_forward(const Element& x, const Element& y);
std::pair<Element, Element> swallow_limit_backward(const Ordinal& beta, const Element& z);

/// Any beta < alpha, composed from the two cases above.
Element swallow_forward(const Element& x, const Element& y);
std::pair<Element, Element> swallow_backward(const Ordinal& beta, const Element& z);

/// Result of ideal_idempotent: idempotent = sum_i coefficients[i] * generators[i].
struct IdealIdempotent {
  Element idempotent;
  std::vector<Element> coefficients;
};

/// Idempotent generator of the ideal generated by `generators`, the join of
/// the idempotents x * quasi_inverse(x).
IdealIdempotent ideal_idempotent(const FieldDescriptor& f, const Ordinal& level,
                                 std::span<const Element> generators);

// ---------------------------------------------------------------------------
// Width-n algebras B(level, n) = B(level, 1)^n.

class TupleElement {
 public:
  explicit TupleElement(std::vector<Element> components);

  static TupleElement zero(const AlgebraDescriptor& d);
  static TupleElement one(const AlgebraDescriptor& d);
  static TupleElement embed_scalar(const AlgebraDescriptor& d, const FieldValue& k);

  std::uint32_t width() const noexcept { return static_cast<std::uint32_t>(components_.size()); }
  const Ordinal& level() const noexcept { return components_.front().level(); }
  const FieldDescriptor& field() const noexcept { return components_.front().field(); }
  const std::vector<Element>& components() const noexcept { return components_; }
  const Element& operator[](std::size_t i) const { return components_[i]; }
  AlgebraDescriptor descriptor() const { return {field(), level(), width()}; }

  bool is_zero() const noexcept;
  std::string to_string() const;

  friend bool operator==(const TupleElement&, const TupleElement&) = default;

 private:
  std::vector<Element> components_;
};

TupleElement operator+(const TupleElement& x, const TupleElement& y);
TupleElement operator-(const TupleElement& x);
TupleElement operator-(const TupleElement& x, const TupleElement& y);
TupleElement operator*(const TupleElement& x, const TupleElement& y);
TupleElement operator*(const FieldValue& k, const TupleElement& x);

TupleElement quasi_inverse(const TupleElement& x);
std::optional<Ordinal> loewy_depth(const TupleElement& x);

struct TupleUnitIdempotentFactors {
  TupleElement unit;
  TupleElement idempotent;
  TupleElement unit_inverse;
};
TupleUnitIdempotentFactors unit_idempotent_factorization(const TupleElement& x);

std::vector<Element> split_components(const TupleElement& x);
TupleElement merge_components(std::vector<Element> components);

// ---------------------------------------------------------------------------
// Dimension sequences.

/// One layer of a dimension sequence: `cardinality` homogeneous components
/// (either a finite count or aleph_0), each of rank 1 over `field`.
struct LayerInfo {
  Ordinal index;
  bool aleph0 = false;
  std::uint64_t count = 0;  // used when !aleph0
  std::uint32_t rank = 1;
  FieldDescriptor field;

  std::string cardinality() const { return aleph0 ? "aleph0" : std::to_string(count); }
};

/// Dimension sequence of a B-family algebra: every layer below `level` is a
/// countable direct sum of copies of K, and the top layer has dimension
/// `top_dim`.
struct DimensionSequence {
  Ordinal level;
  FieldDescriptor field;
  std::uint32_t top_dim = 1;

  /// Layer gamma <= level.
  LayerInfo layer(const Ordinal& gamma) const;
  std::string to_string() const;

  friend bool operator==(const DimensionSequence&, const DimensionSequence&) = default;
};

DimensionSequence dimension_sequence(const AlgebraDescriptor& d);
bool factor_equivalent(const DimensionSequence& a, const DimensionSequence& b);

// ---------------------------------------------------------------------------
// Random elements.

struct RandomSpec {
  /// Largest natural coordinate, and largest CNF coefficient of sampled
  /// limit-level coordinates.
  std::uint64_t max_coord = 3;
  /// Largest ordinal coordinate used at limit levels.
  Ordinal max_limit_coord = Ordinal::parse("w*2+3");
  /// Remaining nesting depth; at 0 deviations have no deviations of their own.
  int depth_budget = 2;
  /// Each candidate coordinate carries a deviation with this probability.
  std::uint64_t density_num = 1;
  std::uint64_t density_den = 2;
};

/// Deterministic sampler of Elements.
///
/// Algorithm: at level 0 draw random_scalar. At level alpha > 0 the constant
/// is 0 with probability 1/3 and otherwise a nonzero random_scalar; then each
/// candidate coordinate (0..max_coord at successor levels, the sorted output
/// of small_ordinals_below(alpha, max_coord, max_limit_coord) at limit
/// levels) independently receives, with probability density, a deviation
/// sampled recursively at the component level with depth_budget - 1 (or a
/// nonzero constant element once the budget is exhausted). Zero draws are
/// dropped.
class ElementSampler {
 public:
  ElementSampler(FieldDescriptor field, RandomSpec spec) : field_(field), spec_(std::move(spec)) {}

  Element sample(const Ordinal& level, Rng& rng);
  Element sample_nonzero(const Ordinal& level, Rng& rng);
  TupleElement sample(const AlgebraDescriptor& d, Rng& rng);

  /// Candidate coordinates at a given level.
  const std::vector<Ordinal>& coordinates(const Ordinal& level);

 private:
  Element sample_at(const Ordinal& level, int budget, Rng& rng);

  FieldDescriptor field_;
  RandomSpec spec_;
  std::vector<std::pair<Ordinal, std::vector<Ordinal>>> coord_cache_;
};

Element random_element(const FieldDescriptor& f, const Ordinal& level, const RandomSpec& spec,
                       std::uint64_t seed);

}  // namespace loewy
