#include <doctest.h>

#include <array>

#include "loewy/basis.hpp"
#include "loewy/error.hpp"
#include "oracle.hpp"

using namespace loewy;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F2 = FieldDescriptor::prime(2);
const Ordinal L0 = Ordinal::finite(0);
const Ordinal L1 = Ordinal::finite(1);
const Ordinal L2 = Ordinal::finite(2);
const Ordinal W = Ordinal::omega();

FieldValue q(long n) { return FieldValue::from_int(Q, n); }
Ordinal nat(std::uint64_t n) { return Ordinal::finite(n); }
BasisIndex idx(const char* s) { return BasisIndex::parse(s); }

Element lvl1(const FieldDescriptor& f, std::vector<std::pair<std::uint64_t, long>> devs, long c) {
  std::vector<Deviation> out;
  for (auto [t, d] : devs) out.push_back({nat(t), Element::scalar(FieldValue::from_int(f, d))});
  return Element::make(L1, std::move(out), FieldValue::from_int(f, c));
}

Element e(std::uint64_t t) { return inject(L1, nat(t), Element::scalar(q(1))); }

std::vector<std::string> literals(const std::vector<BasisIndex>& v) {
  std::vector<std::string> out;
  for (const auto& i : v) out.push_back(i.to_string());
  return out;
}

std::vector<FieldDescriptor> fields() {
  return {Q, F2, FieldDescriptor::prime(5), FieldDescriptor::rational_functions(2)};
}

std::vector<Ordinal> levels() {
  std::vector<Ordinal> out;
  for (const char* s : {"0", "1", "2", "3", "w", "w+1", "w+2", "w*2", "w^2"}) out.push_back(Ordinal::parse(s));
  return out;
}

}  // namespace

TEST_CASE("index literals") {
  for (const char* s : {"U", "C0.U", "M2.U", "Mw+1.C0.U", "P0.U", "P3.M1.U", "Mw^2*2+w.M7.C0.U"}) {
    CHECK(idx(s).to_string() == s);
  }
  CHECK(idx("C0.M2.U") == BasisIndex::c0(BasisIndex::mix(nat(2), BasisIndex::unit())));
  CHECK(idx("P0.U").head().kind == StepKind::Prod0);
  CHECK(idx("P2.U").head().factor == 2);
  for (const char* s : {"", "C0", "M0.U", "X.U", "C1.U", "U.U", "P.U", "Mw+.U"}) CHECK_THROWS_AS(idx(s), ParseError);
  // enumeration order: Unit, C0 subtree, Mix by coordinate
  CHECK(idx("U") < idx("C0.U"));
  CHECK(idx("C0.M5.U") < idx("M1.U"));
  CHECK(idx("M2.U") < idx("Mw.U"));
}

TEST_CASE("socle idempotent") {
  CHECK(socle_idempotent(Q, L1) == e(0));
  CHECK(socle_idempotent(Q, L2) == inject(L2, nat(0), e(0)));
  CHECK(socle_idempotent(Q, L0) == Element::scalar(q(1)));
  for (const auto& lvl : levels()) {
    Element s = socle_idempotent(Q, lvl);
    CHECK(s * s == s);
    CHECK(loewy_depth(s) == L0);
    CHECK(basis_membership(s) == socle_index(lvl));
  }
}

TEST_CASE("basis elements") {
  CHECK(basis_element(Q, L1, idx("M2.U")) == lvl1(Q, {{0, 1}, {2, 1}}, 0));
  CHECK(basis_element(Q, L1, idx("U")) == Element::one(Q, L1));
  Element inner = lvl1(Q, {{0, 1}, {1, 1}}, 0);
  CHECK(basis_element(Q, L2, idx("C0.M1.U")) == inject(L2, nat(0), inner));
  // limit level: Mix adds the K-valued coordinate 0
  const Ordinal w2 = Ordinal::parse("w^2");
  Element m = basis_element(Q, w2, idx("Mw.U"));
  CHECK(m == inject(w2, L0, Element::scalar(q(1))) + inject(w2, W, Element::one(Q, W)));
  CHECK(loewy_depth(m) == W);
}

TEST_CASE("invalid indices") {
  auto expect_bad = [](const AlgebraDescriptor& d, const char* s) {
    try {
      basis_element(d, idx(s));
      FAIL("expected BadIndex for " << s);
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::BadIndex);
    }
  };
  expect_bad(AlgebraDescriptor(Q, L0), "C0.U");
  expect_bad(AlgebraDescriptor(Q, L1), "C0.C0.U");
  expect_bad(AlgebraDescriptor(Q, L1), "Mw.U");
  expect_bad(AlgebraDescriptor(Q, W), "Mw.U");
  expect_bad(AlgebraDescriptor(Q, L1), "P0.U");
  expect_bad(AlgebraDescriptor(Q, L1, 2), "C0.U");
  expect_bad(AlgebraDescriptor(Q, L1, 2), "P2.U");
  expect_bad(AlgebraDescriptor(Q, L1, 2), "P1.P0.U");
}

TEST_CASE("membership") {
  CHECK(basis_membership(e(0) + e(2)) == idx("M2.U"));
  CHECK_FALSE(basis_membership(e(1)).has_value());
  CHECK_FALSE(basis_membership(Element::zero(Q, L1)).has_value());
  CHECK_FALSE(basis_membership(lvl1(Q, {}, 2)).has_value());
  CHECK_FALSE(basis_membership(e(0) + e(1) + e(2)).has_value());
  auto d = AlgebraDescriptor(Q, L1, 3);
  auto t = TupleElement({e(0), Element::zero(Q, L1), e(0) + e(4)});
  CHECK(basis_membership(t) == idx("P2.M4.U"));
  CHECK_FALSE(basis_membership(TupleElement::one(d)).has_value());
}

TEST_CASE("enumeration") {
  BasisBudget b;
  b.max_coord = 2;
  auto v = enumerate_indices(AlgebraDescriptor(Q, L1), b);
  CHECK(literals(v) == std::vector<std::string>{"U", "C0.U", "M1.U", "M2.U"});
  CHECK(literals(enumerate_indices(AlgebraDescriptor(Q, L0), b)) == std::vector<std::string>{"U"});
  BasisBudget none;
  none.max_coord = 0;
  none.max_limit_coord = L0;
  CHECK(literals(enumerate_indices(AlgebraDescriptor(Q, nat(3)), none)) ==
        std::vector<std::string>{"U", "C0.U", "C0.C0.U", "C0.C0.C0.U"});
  b.max_count = 3;
  CHECK(enumerate_indices(AlgebraDescriptor(Q, L2), b).size() == 3);
  BasisBudget wide;
  wide.max_coord = 6;
  auto l2 = enumerate_indices(AlgebraDescriptor(Q, L2), wide);
  CHECK(l2.size() == 57);
  CHECK(std::is_sorted(l2.begin(), l2.end()));
  auto pairs = enumerate_basis(AlgebraDescriptor(Q, W + L1, 2), BasisBudget{});
  for (const auto& [i, el] : pairs) CHECK(basis_membership(el) == i);
}

TEST_CASE("products") {
  AlgebraDescriptor d(Q, L1);
  CHECK(basis_product(d, idx("M1.U"), idx("M2.U")) == idx("C0.U"));
  CHECK(basis_product(d, idx("U"), idx("M2.U")) == idx("M2.U"));
  CHECK(basis_product(d, idx("M1.U"), idx("M1.U")) == idx("M1.U"));
  AlgebraDescriptor d2(Q, L2, 2);
  CHECK(basis_product(d2, idx("P1.M3.U"), idx("P0.M1.C0.U")) == idx("P0.C0.C0.U"));
}

TEST_CASE("closure over every tested configuration") {
  BasisBudget b;
  b.max_coord = 2;
  b.max_limit_coord = Ordinal::parse("w+1");
  b.max_depth = 2;
  b.max_count = 60;
  for (const auto& f : {Q, FieldDescriptor::prime(5)}) {
    for (const auto& lvl : levels()) {
      for (std::uint32_t w : {1U, 2U}) {
        auto r = closure_check(AlgebraDescriptor(f, lvl, w), b);
        INFO(r.summary());
        CHECK(r.passed);
      }
    }
  }
  BasisBudget small;
  small.max_coord = 0;
  CHECK(closure_check(AlgebraDescriptor(Q, L0), small).checked == 1);
}

TEST_CASE("semilattice laws") {
  BasisBudget b;
  b.max_coord = 2;
  b.max_depth = 2;
  for (const char* l : {"2", "w+1"}) {
    AlgebraDescriptor d(Q, Ordinal::parse(l), 2);
    auto v = enumerate_indices(d, b);
    if (v.size() > 24) v.resize(24);
    for (const auto& i : v) {
      CHECK(basis_product(d, i, i) == i);
      for (const auto& j : v) {
        CHECK(basis_product(d, i, j) == basis_product(d, j, i));
        for (const auto& k : v) {
          CHECK(basis_product(d, basis_product(d, i, j), k) == basis_product(d, i, basis_product(d, j, k)));
        }
      }
    }
  }
}

TEST_CASE("coordinates") {
  CHECK(coords_to_string(to_basis_coords(Element::one(Q, L1))) == "{U: 1}");
  CHECK(coords_to_string(to_basis_coords(e(1))) == "{C0.U: -1, M1.U: 1}");
  CHECK(coords_to_string(to_basis_coords(q(7) * e(0))) == "{C0.U: 7}");
  CHECK(augmentation(Element::one(Q, L1)) == q(1));
  CHECK(augmentation(e(1)).is_zero());
  CHECK(augmentation(q(7) * e(0)) == q(7));
  CHECK(to_basis_coords(Element::zero(Q, W)).empty());
}

TEST_CASE("coordinates reconstruct and augmentation is evaluation at the zero path") {
  Rng rng(17);
  for (const auto& f : fields()) {
    ElementSampler s(f, RandomSpec{});
    for (const auto& lvl : levels()) {
      for (std::uint32_t w : {1U, 2U}) {
        AlgebraDescriptor d(f, lvl, w);
        for (int i = 0; i < 15; ++i) {
          TupleElement x = s.sample(d, rng), y = s.sample(d, rng);
          auto cx = to_basis_coords(x);
          CHECK(from_basis_coords(d, cx) == x);
          for (const auto& [ix, k] : cx) CHECK_FALSE(k.is_zero());
          // path 0, 0, ... down to level 0 in component 0
          oracle::Path zero_path;
          for (Ordinal l = lvl; !l.is_zero(); l = component_level(l, Ordinal{})) zero_path.push_back(Ordinal{});
          CHECK(augmentation(x) == oracle::point_value(x[0], zero_path));
          CHECK(augmentation(x * y) == augmentation(x) * augmentation(y));
          CHECK(augmentation(x + y) == augmentation(x) + augmentation(y));
        }
      }
    }
  }
}

TEST_CASE("augmentation of basis elements") {
  BasisBudget b;
  b.max_depth = 2;
  for (const auto& [i, el] : enumerate_basis(AlgebraDescriptor(Q, W + L2, 3), b)) {
    CHECK(augmentation(el) == q(1));
  }
}

TEST_CASE("conormed") {
  for (const auto& lvl : levels()) {
    for (std::uint32_t w : {1U, 2U}) {
      auto r = conormed_check(AlgebraDescriptor(Q, lvl, w), std::nullopt, 200, 9);
      INFO(r.summary());
      CHECK(r.passed);
    }
  }
  auto g1 = conormed_check(AlgebraDescriptor(Q, L1), L1, 300, 1);
  CHECK(g1.passed);
  CHECK(g1.checked > 0);
  auto g2 = conormed_check(AlgebraDescriptor(Q, L2), L2, 1000, 2);
  CHECK(g2.passed);
  CHECK(g2.checked > 100);
  CHECK_THROWS_AS(conormed_check(AlgebraDescriptor(Q, L1), L2, 10, 1), Error);
}

TEST_CASE("boolean view") {
  AlgebraDescriptor d(F2, L1);
  BooleanView bv(d);
  Element e0 = lvl1(F2, {{0, 1}}, 0), e1 = lvl1(F2, {{1, 1}}, 0);
  CHECK(bv.complement(e0) == lvl1(F2, {{0, 1}}, 1));
  CHECK(bv.join(e0, e1) == e0 + e1);
  CHECK(bv.meet(e0, Element::one(F2, L1)) == e0);
  CHECK_THROWS_AS(BooleanView(AlgebraDescriptor(Q, L1)), Error);
  BasisBudget b;
  for (const auto& [i, el] : enumerate_basis(AlgebraDescriptor(F2, W + L1), b)) CHECK(bv.is_idempotent(el[0]));
}

TEST_CASE("cayley table") {
  BasisBudget b;
  b.max_coord = 2;
  auto t = cayley_table(AlgebraDescriptor(Q, L1), b);
  REQUIRE(t.indices.size() == 4);
  CHECK(t.products[0] == t.indices);
  CHECK(t.products[2][3] == idx("C0.U"));
  CHECK(t.products[1][1] == idx("C0.U"));
  CHECK(t.to_csv() ==
        "*,U,C0.U,M1.U,M2.U\n"
        "U,U,C0.U,M1.U,M2.U\n"
        "C0.U,C0.U,C0.U,C0.U,C0.U\n"
        "M1.U,M1.U,C0.U,M1.U,C0.U\n"
        "M2.U,M2.U,C0.U,C0.U,M2.U\n");
  std::string dot = t.to_dot();
  CHECK(dot.find("\"C0.U\" -> \"M1.U\"") != std::string::npos);
  CHECK(dot.find("\"M1.U\" -> \"U\"") != std::string::npos);
  CHECK(dot.find("\"C0.U\" -> \"U\"") == std::string::npos);
}

TEST_CASE("finite products") {
  CHECK(finite_product_basis(1).vectors == std::vector<std::vector<std::uint8_t>>{{1}});
  auto b3 = finite_product_basis(3);
  CHECK(b3.vectors == std::vector<std::vector<std::uint8_t>>{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
  CHECK(b3.closed);
  CHECK(b3.products_checked == 9);
  for (std::uint32_t n = 1; n <= 6; ++n) CHECK(finite_product_basis(n).closed);
}

TEST_CASE("finite fields") {
  FiniteField f4(2, 2);
  CHECK(f4.modulus().to_string('a') == "a^2+a+1");
  CHECK(FiniteField(2, 3).modulus().to_string('a') == "a^3+a+1");
  CHECK(FiniteField(3, 2).modulus().to_string('a') == "a^2+1");
  FiniteField f9(3, 2);
  for (std::uint32_t a = 1; a < 9; ++a) {
    CHECK(f9.mul(a, 1) == a);
    CHECK(f9.mult_order(a) <= 8);
    for (std::uint32_t b = 1; b < 9; ++b) CHECK(f9.mul(a, b) != 0);
  }
}

TEST_CASE("multiplicative basis search") {
  auto s22 = finite_field_mult_basis_search(2, 2);
  CHECK(s22.bases.empty());
  CHECK(s22.candidate_bases == 3);
  auto s21 = finite_field_mult_basis_search(2, 1);
  REQUIRE(s21.bases.size() == 1);
  CHECK(s21.bases_text[0] == std::vector<std::string>{"1"});
  CHECK(finite_field_mult_basis_search(3, 2).bases.empty());
  CHECK(finite_field_mult_basis_search(2, 3).candidate_bases == 28);
  CHECK(finite_field_mult_basis_search(3, 2).candidate_bases == 24);
  CHECK(finite_field_mult_basis_search(7, 1).bases.size() == 1);
  // pruned search against the naive enumeration of all n-subsets
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 2}}) {
    auto pruned = finite_field_mult_basis_search(p, n);
    auto naive = finite_field_mult_basis_search(p, n, 256, SearchMode::Naive);
    CHECK(pruned.bases == naive.bases);
    CHECK(pruned.examined <= naive.examined);
  }
  CHECK(finite_field_mult_basis_search(2, 8).bases.empty());
  try {
    finite_field_mult_basis_search(2, 9);
    FAIL("expected TooLarge");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::TooLarge);
  }
  CHECK(finite_field_mult_basis_search(2, 9, 512).bases.empty());
}
