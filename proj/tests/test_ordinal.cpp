#include "doctest.h"
#include "loewy/error.hpp"
#include "loewy/ordinal.hpp"
#include "loewy/random.hpp"

using loewy::Ordinal;
using loewy::OrdinalKind;

namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }

Ordinal random_ordinal(loewy::Rng& rng, int nest = 2) {
  Ordinal r;
  int terms = static_cast<int>(rng.below(4));
  for (int i = 0; i < terms; ++i) {
    Ordinal exponent = nest > 0 && rng.chance(1, 3) ? random_ordinal(rng, nest - 1)
                                                    : Ordinal::finite(rng.below(3));
    r = r + Ordinal::omega_power(exponent, 1 + rng.below(3));
  }
  return r;
}

}  // namespace

TEST_CASE("ord_cmp examples") {
  CHECK(loewy::ord_cmp(O("w"), O("w")) == std::strong_ordering::equal);
  CHECK(loewy::ord_cmp(O("3"), O("w")) == std::strong_ordering::less);
  CHECK(loewy::ord_cmp(O("w*2+1"), O("w*2")) == std::strong_ordering::greater);
  CHECK(O("w^2") > O("w*100+7"));
  CHECK(O("w^w") > O("w^5*9"));
  CHECK(O("w^(w+1)") > O("w^w*3"));
}

TEST_CASE("ord_add examples") {
  CHECK(O("1") + O("w") == O("w"));
  CHECK(O("w") + O("1") == O("w+1"));
  CHECK(O("w*2+3") + O("w") == O("w*3"));
  CHECK(O("w^2+w") + O("w^2*2+1") == O("w^2*3+1"));
  CHECK(O("5") + O("4") == O("9"));
}

TEST_CASE("ord_classify examples") {
  CHECK(loewy::ord_classify(O("0")).kind == OrdinalKind::Zero);
  auto s = loewy::ord_classify(O("w+4"));
  REQUIRE(s.kind == OrdinalKind::Successor);
  CHECK(*s.predecessor == O("w+3"));
  CHECK(loewy::ord_classify(O("w^2")).kind == OrdinalKind::Limit);
}

TEST_CASE("literal round trip and normalisation") {
  for (const char* lit : {"0", "1", "17", "w", "w+1", "w*2", "w^2*3+w+4", "w^w", "w^(w+1)*2+w^3"}) {
    CHECK(O(lit).to_string() == lit);
  }
  CHECK(O("1+w").to_string() == "w");
  CHECK(O(" w ^ 2 ").to_string() == "w^2");
  CHECK(O("w^1").to_string() == "w");
  CHECK(O("w^0*5").to_string() == "5");
  CHECK_THROWS_AS(O("w+"), loewy::ParseError);
  CHECK_THROWS_AS(O("v"), loewy::ParseError);
  CHECK_THROWS_AS(O("w^(2"), loewy::ParseError);
}

TEST_CASE("predecessor requires a successor") {
  CHECK_THROWS_AS(O("w").predecessor(), loewy::Error);
  CHECK(O("w*2+1").predecessor() == O("w*2"));
}

TEST_CASE("ordinal properties on random samples") {
  loewy::Rng rng(20261016);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
    // associativity
    CHECK((a + b) + c == a + (b + c));
    // right monotonicity: b < c implies a+b < a+c
    if (b < c) CHECK(a + b < a + c);
    if (c < b) CHECK(a + c < a + b);
    // successor classification
    auto cls = loewy::ord_classify(a + Ordinal::finite(1));
    REQUIRE(cls.kind == OrdinalKind::Successor);
    CHECK(*cls.predecessor == a);
    // totality/antisymmetry
    CHECK(((a < b) + (b < a) + (a == b)) == 1);
    // literal round trip
    CHECK(Ordinal::parse(a.to_string()) == a);
  }
}

TEST_CASE("small ordinals below a bound") {
  auto v = loewy::small_ordinals_below(O("w"), 3, O("w"));
  REQUIRE(v.size() == 4);
  CHECK(v.back() == O("3"));
  auto w2 = loewy::small_ordinals_below(O("w^2"), 2, O("w^2"));
  for (const auto& o : w2) CHECK(o < O("w^2"));
  CHECK(std::find(w2.begin(), w2.end(), O("w+1")) != w2.end());
  CHECK(std::find(w2.begin(), w2.end(), O("w*2+2")) != w2.end());
  auto capped = loewy::small_ordinals_below(O("w^2"), 2, O("w"));
  CHECK(capped.back() == O("w"));
  CHECK(loewy::small_ordinals_below(O("0"), 5, O("w")).empty());
}
