#include <doctest.h>

#include "loewy/error.hpp"
#include "loewy/injectivity.hpp"

using namespace loewy;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const Ordinal L1 = Ordinal::finite(1);

using C = SymbolicCardinal;

FieldValue q(long n) { return FieldValue::from_int(Q, n); }
Element e(std::uint64_t t) { return inject(L1, Ordinal::finite(t), Element::scalar(q(1))); }

MElement single(std::uint64_t alpha, long k) { return MElement::explicit_values({{alpha, q(k)}}); }

std::vector<C> vocabulary() {
  return {C::fin(0), C::fin(3), C::aleph(0), C::aleph(1), C::aleph(5), C::kappa(), C::kappa_plus()};
}

}  // namespace

TEST_CASE("cardinal order") {
  CHECK(card_cmp(C::aleph(0), C::kappa()) == std::strong_ordering::less);
  CHECK(card_cmp(C::kappa_plus(), C::kappa()) == std::strong_ordering::greater);
  CHECK(card_cmp(C::fin(3), C::fin(3)) == std::strong_ordering::equal);
  auto v = vocabulary();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) CHECK((card_cmp(v[i], v[j]) < 0) == (i < j));
  }
  for (const char* s : {"fin:3", "aleph:1", "kappa", "kappa+"}) CHECK(C::parse(s).to_string() == s);
  for (const char* s : {"", "aleph", "aleph:", "fin:-1", "kappa++", "aleph:1x"}) CHECK_THROWS_AS(C::parse(s), ParseError);
}

TEST_CASE("M_lambda membership") {
  CHECK(m_membership(MElement::explicit_values({{0, q(1)}, {1, q(2)}, {2, q(3)}}), C::aleph(0)));
  MElement sym;
  sym.indicator = SymbolicSet{C::aleph(0), "A"};
  CHECK_FALSE(m_membership(sym, C::aleph(0)));
  sym.indicator = SymbolicSet{C::kappa(), "kappa"};
  CHECK(m_membership(sym, C::kappa_plus()));
  // monotone in lambda
  for (const auto& c : vocabulary()) {
    if (!c.is_infinite()) continue;
    MElement m;
    m.indicator = SymbolicSet{c, "S"};
    bool seen = false;
    for (const auto& lam : vocabulary()) {
      bool in = m_membership(m, lam);
      CHECK((!seen || in));
      seen = seen || in;
    }
  }
}

TEST_CASE("gamma") {
  CHECK(gamma() == C::kappa_plus());
  CHECK(card_cmp(gamma(), C::kappa()) > 0);
  CHECK(card_cmp(gamma(), C::kappa_plus()) == 0);
}

TEST_CASE("finitely generated ideal with a table") {
  FiniteTable t;
  t.entries.emplace(0, single(0, 3));
  t.entries.emplace(1, single(1, 5));
  Verdict v = baer_extend(C::aleph(0), FinitelyGenerated{{e(0), e(1)}}, t);
  REQUIRE(std::holds_alternative<Extends>(v));
  CHECK(std::get<Extends>(v).witness == MElement::explicit_values({{0, q(3)}, {1, q(5)}}));

  FiniteTable bad;
  bad.entries.emplace(0, MElement::explicit_values({{0, q(3)}, {2, q(1)}}));
  Verdict w = baer_extend(C::aleph(0), FinitelyGenerated{{e(0), e(1)}}, bad);
  REQUIRE(std::holds_alternative<InvalidHomVerdict>(w));
  CHECK(std::get<InvalidHomVerdict>(w).coordinate == 0U);

  FiniteTable outside;
  outside.entries.emplace(4, single(4, 1));
  CHECK(std::holds_alternative<InvalidHomVerdict>(baer_extend(C::aleph(0), FinitelyGenerated{{e(0)}}, outside)));
}

TEST_CASE("finitely generated ideal with the inclusion") {
  Verdict v = baer_extend(C::aleph(0), FinitelyGenerated{{q(2) * e(0), q(5) * e(3)}}, Inclusion{});
  REQUIRE(std::holds_alternative<Extends>(v));
  CHECK(std::get<Extends>(v).witness == MElement::explicit_values({{0, q(1)}, {3, q(1)}}));
  // the unit ideal is not inside M_lambda below kappa^+
  Element unit = Element::one(Q, L1);
  CHECK(std::holds_alternative<InvalidHomVerdict>(baer_extend(C::kappa(), FinitelyGenerated{{unit}}, Inclusion{})));
  CHECK(std::holds_alternative<Extends>(baer_extend(C::kappa_plus(), FinitelyGenerated{{unit - e(2)}}, Inclusion{})));
}

TEST_CASE("socle sums") {
  Verdict v = baer_extend(C::aleph(0), SocleDirectSum{SupportDescriptor::symbolic(C::aleph(0), "A")}, Inclusion{});
  REQUIRE(std::holds_alternative<Fails>(v));
  CHECK(std::get<Fails>(v).required == C::aleph(0));
  CHECK(std::get<Fails>(v).allowed == C::aleph(0));
  CHECK(std::holds_alternative<Extends>(
      baer_extend(C::kappa_plus(), SocleDirectSum{SupportDescriptor::symbolic(C::kappa(), "kappa")}, Inclusion{})));
  CHECK(std::holds_alternative<Extends>(
      baer_extend(C::aleph(1), SocleDirectSum{SupportDescriptor::symbolic(C::aleph(0), "A")}, Inclusion{})));
  Verdict fin = baer_extend(C::aleph(0), SocleDirectSum{SupportDescriptor::explicit_finite({4, 1, 4})}, Inclusion{});
  REQUIRE(std::holds_alternative<Extends>(fin));
  CHECK(std::get<Extends>(fin).witness == MElement::explicit_values({{1, q(1)}, {4, q(1)}}));

  // table on part of the index set, inclusion on the rest
  FiniteTable t;
  t.entries.emplace(1, single(1, 7));
  Verdict mixed = baer_extend(C::aleph(0), SocleDirectSum{SupportDescriptor::explicit_finite({1, 2})}, t);
  REQUIRE(std::holds_alternative<Extends>(mixed));
  CHECK(std::get<Extends>(mixed).witness == MElement::explicit_values({{1, q(7)}, {2, q(1)}}));
  Verdict sym = baer_extend(C::aleph(0), SocleDirectSum{SupportDescriptor::symbolic(C::aleph(0), "A")}, t);
  CHECK(std::holds_alternative<Fails>(sym));
  FiniteTable stray;
  stray.entries.emplace(9, single(9, 1));
  CHECK(std::holds_alternative<InvalidHomVerdict>(
      baer_extend(C::aleph(0), SocleDirectSum{SupportDescriptor::explicit_finite({1, 2})}, stray)));

  CHECK_THROWS_AS(SupportDescriptor::symbolic(C::kappa_plus(), "too big"), Error);
  CHECK_THROWS_AS(SupportDescriptor::symbolic(C::fin(2), "finite"), Error);
  CHECK_THROWS_AS(baer_extend(C::fin(5), FinitelyGenerated{}, Inclusion{}), Error);
}

TEST_CASE("strictness witnesses") {
  for (const auto& lam : {C::aleph(0), C::aleph(1), C::kappa()}) {
    auto [ideal, hom] = strictness_witness(lam);
    CHECK(std::holds_alternative<Fails>(baer_extend(lam, ideal, hom)));
    CHECK(std::holds_alternative<Extends>(baer_extend(C::kappa_plus(), ideal, hom)));
    // explicit finite sub-ideals extend at lambda
    CHECK(std::holds_alternative<Extends>(
        baer_extend(lam, SocleDirectSum{SupportDescriptor::explicit_finite({0, 1, 2, 3})}, Inclusion{})));
  }
  CHECK(std::holds_alternative<Extends>(baer_extend(
      C::aleph(1), SocleDirectSum{SupportDescriptor::symbolic(C::aleph(0), "B")}, Inclusion{})));
  try {
    strictness_witness(C::kappa_plus());
    FAIL("expected BadCardinal");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::BadCardinal);
  }
  CHECK_THROWS_AS(strictness_witness(C::fin(7)), Error);
}

TEST_CASE("finitely generated ideals never fail") {
  Rng rng(12);
  RandomSpec spec;
  spec.max_coord = 5;
  ElementSampler s(Q, spec);
  for (int i = 0; i < 300; ++i) {
    std::vector<Element> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(s.sample(L1, rng));
    Element idem = ideal_idempotent(Q, L1, gens).idempotent;
    FiniteTable t;
    for (std::uint64_t alpha = 0; alpha <= 7; ++alpha) {
      if (idem.value_at(Ordinal::finite(alpha)).constant().is_one() && rng.chance(1, 2)) {
        t.entries.emplace(alpha, single(alpha, rng.between(-4, 4)));
      }
    }
    for (const auto& lam : {C::aleph(0), C::aleph(2), C::kappa(), C::kappa_plus()}) {
      Verdict v = baer_extend(lam, FinitelyGenerated{gens}, t);
      REQUIRE(std::holds_alternative<Extends>(v));
      const auto& m = std::get<Extends>(v).witness;
      CHECK(m_membership(m, lam));
      for (const auto& [alpha, entry] : t.entries) {
        auto it = m.values.find(alpha);
        FieldValue got = it == m.values.end() ? q(0) : it->second;
        auto want = entry.values.find(alpha);
        CHECK(got == (want == entry.values.end() ? q(0) : want->second));
      }
      Verdict inc = baer_extend(lam, FinitelyGenerated{gens}, Inclusion{});
      CHECK_FALSE(std::holds_alternative<Fails>(inc));
      if (lam == C::kappa_plus()) CHECK(std::holds_alternative<Extends>(inc));
    }
  }
}
