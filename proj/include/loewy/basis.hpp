#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loewy/algebra.hpp"

namespace loewy {

// ---------------------------------------------------------------------------
// Basis indices

enum class StepKind : std::uint8_t { C0, Mix, Prod0, ProdMix };

struct IndexStep {
  StepKind kind = StepKind::C0;
  Ordinal coord;            // Mix only
  std::uint32_t factor = 0;  // ProdMix only

  friend bool operator==(const IndexStep&, const IndexStep&) = default;
  friend std::strong_ordering operator<=>(const IndexStep& a, const IndexStep& b);
};

/// Address of an element of the constructed strong multiplicative basis.
/// Stored as the path of steps from the outermost layer down to the
/// terminating Unit, so `C0.M2.U` is C0(Mix(2, Unit)).
///
/// Ordering is lexicographic on steps with a shorter path first; that is
/// the enumeration order (Unit, then the C0 subtree, then Mix by coordinate).
class BasisIndex {
 public:
  BasisIndex() = default;

  static BasisIndex unit() { return {}; }
  static BasisIndex c0(BasisIndex inner);
  static BasisIndex mix(Ordinal coord, BasisIndex inner);
  static BasisIndex prod0(BasisIndex inner);
  static BasisIndex prod_mix(std::uint32_t factor, BasisIndex inner);

  /// Literal form: `U`, `C0.U`, `M2.U`, `Mw+1.C0.U`, `P0.U`, `P1.M3.U`.
  static BasisIndex parse(std::string_view text);
  std::string to_string() const;

  bool is_unit() const noexcept { return steps_.empty(); }
  const std::vector<IndexStep>& steps() const noexcept { return steps_; }
  const IndexStep& head() const { return steps_.front(); }
  /// Index with the outermost step removed.
  BasisIndex tail() const;

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
  friend std::strong_ordering operator<=>(const BasisIndex& a, const BasisIndex& b);

 private:
  BasisIndex prepend(IndexStep s) const;
  std::vector<IndexStep> steps_;
};

/// Throws BadIndex unless `idx` addresses a basis element of `desc`.
void validate_index(const AlgebraDescriptor& desc, const BasisIndex& idx);

// ---------------------------------------------------------------------------
// Basis elements

/// The designated idempotent of the socle: coordinate 0 at every layer,
/// down to a copy of K.
Element socle_idempotent(const FieldDescriptor& f, const Ordinal& level);
BasisIndex socle_index(const Ordinal& level);

/// Unit -> 1; C0(i) -> inject(0, b(i)); Mix(t, i) -> inject(0, e) + inject(t, b(i))
/// with e the socle idempotent of component 0. For width n > 1,
/// Prod0(i) -> (b(i), 0, ..) and ProdMix(k, i) -> (e, .., b(i) at k, ..).
TupleElement basis_element(const AlgebraDescriptor& desc, const BasisIndex& idx);
Element basis_element(const FieldDescriptor& f, const Ordinal& level, const BasisIndex& idx);

std::optional<BasisIndex> basis_membership(const Element& x);
std::optional<BasisIndex> basis_membership(const TupleElement& x);

/// Index of basis_element(i) * basis_element(j), computed on indices alone.
BasisIndex basis_product(const AlgebraDescriptor& desc, const BasisIndex& i, const BasisIndex& j);

/// Loewy depth of a basis element, read off the index.
Ordinal basis_depth(const AlgebraDescriptor& desc, const BasisIndex& idx);

struct BasisBudget {
  /// Mix coordinates 1..max_coord at successor levels.
  std::uint64_t max_coord = 2;
  /// Limit-level coordinates come from small_ordinals_below(level, max_coord, max_limit_coord).
  Ordinal max_limit_coord = Ordinal::parse("w+2");
  /// Longest index path, not counting a leading product step.
  std::uint32_t max_depth = 3;
  /// Stop after this many indices (0 = no cap).
  std::size_t max_count = 0;
};

/// Indices within the budget in canonical order, paired with their elements.
std::vector<std::pair<BasisIndex, TupleElement>> enumerate_basis(const AlgebraDescriptor& desc,
                                                                 const BasisBudget& budget);
std::vector<BasisIndex> enumerate_indices(const AlgebraDescriptor& desc, const BasisBudget& budget);

// ---------------------------------------------------------------------------
// Coordinates

using BasisCoords = std::vector<std::pair<BasisIndex, FieldValue>>;

/// Unique expansion x = sum k_i b(i); sorted by index, zero coefficients dropped.
BasisCoords to_basis_coords(const Element& x);
BasisCoords to_basis_coords(const TupleElement& x);

/// Sum of the expansion coefficients.
FieldValue augmentation(const Element& x);
FieldValue augmentation(const TupleElement& x);

/// Inverse of to_basis_coords.
TupleElement from_basis_coords(const AlgebraDescriptor& desc, const BasisCoords& coords);

std::string coords_to_string(const BasisCoords& coords);

// ---------------------------------------------------------------------------
// Checks

struct CheckReport {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t failures = 0;
  /// First counterexample, human readable.
  std::string counterexample;

  void fail(std::string what) {
    passed = false;
    ++failures;
    if (counterexample.empty()) counterexample = std::move(what);
  }
  std::string summary() const;
};

/// Every pair of enumerated basis elements: the product is a basis element,
/// agrees with basis_product, and every element is idempotent and round-trips
/// through basis_membership.
CheckReport closure_check(const AlgebraDescriptor& desc, const BasisBudget& budget);

/// For random nonzero x: every basis index in to_basis_coords(x) has depth
/// at most loewy_depth(x). With `gamma`, only samples of depth < gamma count
/// and the condition reads "index depth < gamma".
CheckReport conormed_check(const AlgebraDescriptor& desc, std::optional<Ordinal> gamma, std::uint64_t samples,
                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Boolean view over F_2

class BooleanView {
 public:
  /// Throws UnsupportedField unless the field is F_2.
  explicit BooleanView(const AlgebraDescriptor& desc);

  Element meet(const Element& x, const Element& y) const { return x * y; }
  Element join(const Element& x, const Element& y) const { return x + y + x * y; }
  Element complement(const Element& x) const;
  bool is_idempotent(const Element& x) const { return x * x == x; }

 private:
  AlgebraDescriptor desc_;
};

// ---------------------------------------------------------------------------
// Cayley tables

struct CayleyTable {
  std::vector<BasisIndex> indices;
  std::vector<std::vector<BasisIndex>> products;  // products[i][j] = indices[i] * indices[j]

  /// Header row of index literals, then one row per index.
  std::string to_csv() const;
  /// Hasse diagram of the semilattice order a <= b iff a*b = a, restricted to `indices`.
  std::string to_dot() const;
};

CayleyTable cayley_table(const AlgebraDescriptor& desc, const BasisBudget& budget);

// ---------------------------------------------------------------------------
// Finite examples

/// The basis {1_0} u {1_0 + 1_i : 0 < i < n} of K^n as 0/1 vectors, with an
/// exhaustive check that all pairwise products stay inside.
struct FiniteProductBasis {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint8_t>> vectors;
  std::uint64_t products_checked = 0;
  bool closed = false;
};

FiniteProductBasis finite_product_basis(std::uint32_t n);

/// F_{p^n} as F_p[a]/(m). Elements are encoded as integers sum c_i p^i.
class FiniteField {
 public:
  /// Uses the first monic irreducible m of degree n, ordered by its encoding.
  FiniteField(std::uint64_t p, std::uint32_t n);

  std::uint64_t p() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return n_; }
  std::uint64_t order() const noexcept { return q_; }
  const FpPoly& modulus() const noexcept { return modulus_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * q_ + b]; }
  std::vector<std::uint64_t> digits(std::uint32_t a) const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t mult_order(std::uint32_t a) const;
  bool independent(const std::vector<std::uint32_t>& elems) const;
  std::string element_to_string(std::uint32_t a) const;

 private:
  std::uint64_t p_;
  std::uint32_t n_;
  std::uint64_t q_;
  FpPoly modulus_;
  std::vector<std::uint32_t> table_;
};

enum class SearchMode { Pruned, Naive };

struct MultBasisSearch {
  std::uint64_t p = 0;
  std::uint32_t n = 0;
  std::string modulus;
  /// Number of unordered F_p-bases of F_{p^n}.
  std::uint64_t candidate_bases = 0;
  /// Subsets actually tested for closure.
  std::uint64_t examined = 0;
  std::vector<std::vector<std::uint32_t>> bases;
  std::vector<std::vector<std::string>> bases_text;
};

/// Every F_p-basis B of F_{p^n} with b*b' in B u {0}. Pruned mode only tries
/// elements whose powers fit inside a set of size n (a closed finite set of
/// nonzero field elements contains every power of its members) and cuts a
/// branch once a product below the next candidate is missing. Naive mode
/// tests every n-subset. Throws TooLarge when p^n exceeds `bound`.
MultBasisSearch finite_field_mult_basis_search(std::uint64_t p, std::uint32_t n, std::uint64_t bound = 256,
                                               SearchMode mode = SearchMode::Pruned);

}  // namespace loewy
