#include <doctest.h>

#include "loewy/error.hpp"
#include "loewy/twisted.hpp"

using namespace loewy;

namespace {

const FieldDescriptor F2X = FieldDescriptor::rational_functions(2);
const Ordinal L1 = Ordinal::finite(1);

FieldValue fx(const char* s) { return FieldValue::parse(F2X, s); }
TwistedElement tw(const char* s) { return TwistedElement::parse(F2X, s); }

Element generic(const FieldDescriptor& f, std::vector<std::pair<std::uint64_t, const char*>> devs,
                const char* c) {
  std::vector<Deviation> out;
  for (auto [t, d] : devs) out.push_back({Ordinal::finite(t), Element::scalar(FieldValue::parse(f, d))});
  return Element::make(L1, std::move(out), FieldValue::parse(f, c));
}

}  // namespace

TEST_CASE("literals") {
  for (const char* s : {"{; nu(0)}", "{0: 1; nu(0)}", "{0: x^2, 3: (x+1)/(x^2+x+1); nu(x)}"}) {
    CHECK(tw(s).to_string() == s);
  }
  CHECK(tw(" { 2 : x , 0 : 1 ; nu ( (x)/(x+1) ) } ").to_string() == "{0: 1, 2: x; nu((x)/(x+1))}");
  for (const char* s : {"", "{}", "{0 1; nu(0)}", "{0: 1; nu(0)", "{0: 1, 0: x; nu(0)}", "{0: 1; mu(0)}"}) {
    CHECK_THROWS_AS(tw(s), Error);
  }
  CHECK_THROWS_AS(TwistedElement::zero(FieldDescriptor::rationals()), Error);
}

TEST_CASE("arithmetic examples") {
  CHECK(tw("{0: 1; nu(0)}") * tw("{0: 1; nu(0)}") == tw("{0: 1; nu(0)}"));
  CHECK(tw("{; nu(x)}") * tw("{; nu(x)}") == tw("{; nu(x^2)}"));
  auto a = tw("{1: x+1, 4: 1; nu(x)}");
  CHECK((a + (-a)).is_zero());
  CHECK_THROWS_AS(a + TwistedElement::one(FieldDescriptor::rational_functions(3)), Error);
}

TEST_CASE("quasi-inverse examples") {
  CHECK(t_quasi_inverse(tw("{; nu(x)}")) == tw("{; nu((1)/(x))}"));
  CHECK(t_quasi_inverse(tw("{0: x^2; nu(0)}")) == tw("{0: (1)/(x^2); nu(0)}"));
  CHECK(t_quasi_inverse(TwistedElement::zero(F2X)).is_zero());
}

TEST_CASE("membership") {
  CHECK_FALSE(t_membership(generic(F2X, {}, "x")));
  CHECK(t_membership(generic(F2X, {}, "x^2+1")));
  CHECK(t_membership(generic(F2X, {{0, "x"}, {5, "x+1"}}, "0")));
  auto back = from_generic(generic(F2X, {{0, "x"}}, "x^2+1"));
  REQUIRE(back.has_value());
  CHECK(back->nu_param() == fx("x+1"));
  CHECK_FALSE(from_generic(generic(F2X, {}, "x")).has_value());
  CHECK_THROWS_AS(t_membership(Element::one(F2X, Ordinal::finite(2))), Error);
}

TEST_CASE("psi examples") {
  CHECK(psi_embed(generic(F2X, {{0, "x"}}, "0")) == tw("{0: x^2; nu(0)}"));
  CHECK(psi_embed(Element::one(F2X, L1)) == TwistedElement::one(F2X));
  CHECK(psi_embed(generic(F2X, {{0, "x"}}, "x")).to_generic() == generic(F2X, {{0, "x^2"}}, "x^2"));
}

TEST_CASE("dimension sequence") {
  auto d = t_dimension_sequence(F2X);
  CHECK(d.layer(Ordinal{}).aleph0);
  CHECK(d.layer(L1).count == 1);
  CHECK(d.top_dim == 1);
  CHECK(factor_equivalent(d, dimension_sequence(AlgebraDescriptor(F2X, L1))));
}

TEST_CASE("twisted ring laws against the embedding into B(1,1)") {
  for (const auto& f : {F2X, FieldDescriptor::rational_functions(3), FieldDescriptor::prime(5)}) {
    Rng rng(77);
    const auto one = TwistedElement::one(f);
    for (int i = 0; i < 300; ++i) {
      auto a = random_twisted(f, rng), b = random_twisted(f, rng), c = random_twisted(f, rng);
      CHECK((a * b).to_generic() == a.to_generic() * b.to_generic());
      CHECK((a + b).to_generic() == a.to_generic() + b.to_generic());
      CHECK(from_generic(a.to_generic()) == a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * one == a);
      for (std::uint64_t t = 0; t < 6; ++t) CHECK((a * b).value_at(t) == a.value_at(t) * b.value_at(t));
      auto s = t_quasi_inverse(a);
      CHECK(a * s * a == a);
      CHECK(s * a * s == s);
    }
  }
}

TEST_CASE("psi is an injective unital ring homomorphism") {
  for (const auto& f : {F2X, FieldDescriptor::prime(2), FieldDescriptor::prime(5)}) {
    Rng rng(8);
    RandomSpec spec;
    spec.max_coord = 4;
    ElementSampler s(f, spec);
    CHECK(psi_embed(Element::one(f, L1)) == TwistedElement::one(f));
    for (int i = 0; i < 300; ++i) {
      Element x = s.sample(L1, rng), y = s.sample(L1, rng);
      CHECK(psi_embed(x * y) == psi_embed(x) * psi_embed(y));
      CHECK(psi_embed(x + y) == psi_embed(x) + psi_embed(y));
      CHECK((psi_embed(x) == psi_embed(y)) == (x == y));
      CHECK(psi_preimage(psi_embed(x)) == x);
    }
  }
}

TEST_CASE("psi is onto over a prime field, not over F_2(x)") {
  const auto f5 = FieldDescriptor::prime(5);
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    auto t = random_twisted(f5, rng);
    auto pre = psi_preimage(t);
    REQUIRE(pre.has_value());
    CHECK(psi_embed(*pre) == t);
  }
  CHECK_FALSE(psi_preimage(tw("{0: x; nu(0)}")).has_value());
}
