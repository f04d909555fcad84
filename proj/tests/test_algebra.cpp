#include <doctest.h>

#include <array>

#include "loewy/algebra.hpp"
#include "loewy/error.hpp"
#include "oracle.hpp"

using namespace loewy;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const Ordinal L0 = Ordinal::finite(0);
const Ordinal L1 = Ordinal::finite(1);
const Ordinal L2 = Ordinal::finite(2);
const Ordinal W = Ordinal::omega();

FieldValue q(long n) { return FieldValue::from_int(Q, n); }
Element sc(long n) { return Element::scalar(q(n)); }
Ordinal nat(std::uint64_t n) { return Ordinal::finite(n); }

// ({t -> d}; c) at level 1 over Q
Element lvl1(std::vector<std::pair<std::uint64_t, long>> devs, long c) {
  std::vector<Deviation> out;
  for (auto [t, d] : devs) out.push_back({nat(t), sc(d)});
  return Element::make(L1, std::move(out), q(c));
}

std::vector<FieldDescriptor> fields() {
  return {Q, FieldDescriptor::prime(2), FieldDescriptor::prime(5), FieldDescriptor::rational_functions(2)};
}

std::vector<Ordinal> levels() {
  std::vector<Ordinal> out;
  for (const char* s : {"0", "1", "2", "3", "w", "w+1", "w+2", "w*2", "w^2"}) out.push_back(Ordinal::parse(s));
  return out;
}

// Small samples keep the quadratic property checks cheap.
RandomSpec small_spec() {
  RandomSpec s;
  s.max_coord = 2;
  s.max_limit_coord = Ordinal::parse("w+2");
  s.depth_budget = 2;
  return s;
}

bool pointwise_equal(const Element& a, const Element& b, const std::vector<oracle::Path>& paths) {
  for (const auto& p : paths) {
    if (!(oracle::point_value(a, p) == oracle::point_value(b, p))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("constructors") {
  CHECK(Element::one(Q, L1).to_string() == "{; 1}");
  CHECK(Element::zero(Q, L0).to_string() == "0");
  auto f2 = FieldDescriptor::prime(2);
  auto e = TupleElement::embed_scalar(AlgebraDescriptor(f2, W), FieldValue::one(f2));
  CHECK(e[0] == Element::one(f2, W));
  CHECK_THROWS_AS(AlgebraDescriptor(Q, L1, 0), Error);
}

TEST_CASE("inject") {
  Element e0 = inject(L1, nat(0), sc(1));
  CHECK(e0 == lvl1({{0, 1}}, 0));
  Element x = inject(L2, nat(3), Element::one(Q, L1));
  CHECK(x.deviations().size() == 1);
  CHECK(x.deviations()[0].coord == nat(3));
  CHECK(x.deviations()[0].value == Element::one(Q, L1));
  CHECK(x.constant().is_zero());
  CHECK(inject(L2, nat(1), Element::zero(Q, L1)).is_zero());
  try {
    inject(L2, nat(0), sc(1));
    FAIL("expected LevelMismatch");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::LevelMismatch);
  }
  // limit level: component at coordinate beta is B(beta,1)
  Element y = inject(W, nat(2), Element::one(Q, L2));
  CHECK(y.value_at(nat(2)) == Element::one(Q, L2));
  CHECK(y.value_at(nat(5)).is_zero());
  CHECK_THROWS_AS(inject(W, W, Element::one(Q, W)), Error);
}

TEST_CASE("add, neg, scalar") {
  CHECK(lvl1({{0, 2}}, 1) + lvl1({{0, -2}}, 1) == lvl1({}, 2));
  CHECK(-lvl1({{1, 3}}, 2) == lvl1({{1, -3}}, -2));
  CHECK((q(0) * lvl1({{1, 3}}, 2)).is_zero());
  CHECK_THROWS_AS(lvl1({}, 1) + Element::one(Q, L2), Error);
  CHECK_THROWS_AS(lvl1({}, 1) + Element::one(FieldDescriptor::prime(5), L1), Error);
}

TEST_CASE("mul") {
  CHECK(lvl1({{0, 2}}, 1) * lvl1({{0, 3}}, 2) == lvl1({{0, 13}}, 2));
  Element x = lvl1({{0, 2}, {4, -1}}, 3);
  CHECK(x * Element::one(Q, L1) == x);
  CHECK((inject(L1, nat(0), sc(1)) * inject(L1, nat(1), sc(1))).is_zero());
}

TEST_CASE("quasi-inverse examples") {
  CHECK(quasi_inverse(lvl1({}, 4)) == Element::make(L1, {}, FieldValue::rational(mpq_class(1, 4))));
  Element idem = lvl1({{0, -1}}, 1);
  CHECK(quasi_inverse(idem) == idem);
  CHECK(quasi_inverse(Element::zero(Q, L2)).is_zero());
}

TEST_CASE("factorization examples") {
  auto f = unit_idempotent_factorization(lvl1({}, 3));
  CHECK(f.unit == lvl1({}, 3));
  CHECK(f.idempotent == Element::one(Q, L1));
  CHECK(f.unit_inverse == Element::make(L1, {}, FieldValue::rational(mpq_class(1, 3))));
  Element idem = lvl1({{0, -1}}, 1);
  auto g = unit_idempotent_factorization(idem);
  CHECK(g.idempotent == idem);
  CHECK(g.unit == Element::one(Q, L1));
  CHECK(g.unit_inverse == Element::one(Q, L1));
  auto h = unit_idempotent_factorization(Element::zero(Q, L1));
  CHECK(h.idempotent.is_zero());
  CHECK(h.unit == Element::one(Q, L1));
  CHECK(h.unit_inverse == Element::one(Q, L1));
}

TEST_CASE("loewy depth examples") {
  CHECK(loewy_depth(inject(L1, nat(0), sc(1))) == L0);
  auto one2 = TupleElement::one(AlgebraDescriptor(Q, W, 2));
  CHECK(loewy_depth(one2) == W);
  CHECK(loewy_depth(one2[1]) == W);
  CHECK(loewy_depth(inject(L2, nat(3), Element::one(Q, L1))) == L1);
  CHECK_FALSE(loewy_depth(Element::zero(Q, W)).has_value());
  CHECK(loewy_depth(sc(7)) == L0);
}

TEST_CASE("dimension sequences") {
  auto d1 = dimension_sequence(AlgebraDescriptor(Q, L1));
  CHECK(d1.layer(L0).aleph0);
  CHECK(d1.layer(L1).count == 1);
  auto dw = dimension_sequence(AlgebraDescriptor(Q, W, 2));
  CHECK(dw.layer(nat(17)).aleph0);
  CHECK_FALSE(dw.layer(W).aleph0);
  CHECK(dw.layer(W).count == 2);
  CHECK_THROWS_AS(dw.layer(W + L1), Error);
  auto d0 = dimension_sequence(AlgebraDescriptor(Q, L0));
  CHECK(d0.layer(L0).count == 1);
  CHECK(factor_equivalent(dimension_sequence(AlgebraDescriptor(Q, L2, 3)),
                          dimension_sequence(AlgebraDescriptor(Q, L2, 3))));
  CHECK_FALSE(factor_equivalent(dimension_sequence(AlgebraDescriptor(Q, L2, 3)),
                                dimension_sequence(AlgebraDescriptor(Q, L2, 4))));
  // B(s,n) against n merged copies of B(s,1)
  auto merged = merge_components({Element::one(Q, W), Element::one(Q, W), Element::one(Q, W)});
  CHECK(dimension_sequence(merged.descriptor()) == dimension_sequence(AlgebraDescriptor(Q, W, 3)));
}

TEST_CASE("split and merge") {
  auto one2 = TupleElement::one(AlgebraDescriptor(Q, L2, 2));
  auto parts = split_components(one2);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Element::one(Q, L2));
  Rng rng(11);
  ElementSampler s(Q, small_spec());
  for (int i = 0; i < 1000; ++i) {
    auto t = s.sample(AlgebraDescriptor(Q, W + L1, 3), rng);
    CHECK(merge_components(split_components(t)) == t);
  }
}

TEST_CASE("peel") {
  auto p = peel_component(lvl1({{0, 2}}, 1), nat(0));
  CHECK(p.component == sc(3));
  CHECK(p.rest == lvl1({}, 1));
  auto one = Element::one(Q, L2);
  auto p1 = peel_component(one, nat(4));
  CHECK(p1.component == Element::one(Q, L1));
  CHECK(p1.rest == one);
  Element e0 = inject(L1, nat(0), sc(1));
  auto p2 = peel_component(e0, nat(1));
  CHECK(p2.component.is_zero());
  CHECK(p2.rest == e0);
  // successor levels shift later coordinates down
  auto p3 = peel_component(lvl1({{0, 1}, {2, 5}}, 0), nat(1));
  CHECK(p3.rest == lvl1({{0, 1}, {1, 5}}, 0));
  CHECK_THROWS_AS(peel_component(sc(1), nat(0)), Error);
}

TEST_CASE("swallow examples") {
  CHECK(swallow_succ_forward(sc(5), lvl1({}, 1)) == lvl1({{0, 4}}, 1));
  CHECK(swallow_succ_forward(sc(3), lvl1({}, 3)) == lvl1({}, 3));
  CHECK(swallow_succ_forward(sc(2), lvl1({{0, 3}}, 0)) == lvl1({{0, 2}, {1, 3}}, 0));

  Element oneW = Element::one(Q, W);
  CHECK(swallow_limit_forward(Element::one(Q, L2), oneW) == oneW);
  Element z = swallow_limit_forward(sc(5), oneW);
  CHECK(z.to_string() == "{1: {0: 4; 0}; 1}");
  CHECK(swallow_limit_backward(L0, z) == std::pair{sc(5), oneW});
  try {
    swallow_limit_forward(sc(1), Element::one(Q, L2));
    FAIL("expected BadOrdinals");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::BadOrdinals);
  }

  Element one2 = Element::one(Q, L2);
  Element z2 = swallow_forward(sc(5), one2);
  CHECK(z2.to_string() == "{0: {0: 4; 0}; 1}");
  CHECK(z2.value_at(nat(0)) == lvl1({{0, 4}}, 1));
  CHECK(swallow_forward(Element::one(Q, L1), one2) == one2);
  CHECK_THROWS_AS(swallow_forward(one2, one2), Error);
}

TEST_CASE("ideal idempotent examples") {
  std::vector<Element> gens = {inject(L1, nat(0), sc(3)), inject(L1, nat(2), sc(5))};
  auto r = ideal_idempotent(Q, L1, gens);
  CHECK(r.idempotent == lvl1({{0, 1}, {2, 1}}, 0));
  std::vector<Element> unit = {lvl1({}, 2)};
  CHECK(ideal_idempotent(Q, L1, unit).idempotent == Element::one(Q, L1));
  CHECK(ideal_idempotent(Q, L1, {}).idempotent.is_zero());
}

TEST_CASE("random elements") {
  RandomSpec none = small_spec();
  none.density_num = 0;
  Element x = random_element(Q, L2, none, 5);
  CHECK(x.deviations().empty());
  CHECK(random_element(Q, Ordinal::parse("w*2"), small_spec(), 42) == random_element(Q, Ordinal::parse("w*2"), small_spec(), 42));
  RandomSpec flat = small_spec();
  flat.depth_budget = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const auto& d : random_element(Q, L1, flat, seed).deviations()) CHECK(d.value.level().is_zero());
  }
}

TEST_CASE("ring operations agree with pointwise evaluation") {
  Rng rng(2024);
  for (const auto& f : fields()) {
    ElementSampler s(f, small_spec());
    for (const auto& lvl : levels()) {
      for (int i = 0; i < 15; ++i) {
        std::array<Element, 2> xy{s.sample(lvl, rng), s.sample(lvl, rng)};
        const Element& x = xy[0];
        const Element& y = xy[1];
        auto paths = oracle::probe_paths(xy);
        Element sum = x + y, prod = x * y, qi = quasi_inverse(x);
        for (const auto& p : paths) {
          auto a = oracle::point_value(x, p);
          auto b = oracle::point_value(y, p);
          CHECK(oracle::point_value(sum, p) == a + b);
          CHECK(oracle::point_value(prod, p) == a * b);
          CHECK(oracle::point_value(qi, p) == (a.is_zero() ? a : a.inverse()));
        }
      }
    }
  }
}

TEST_CASE("ring axioms and regularity") {
  Rng rng(7);
  for (const auto& f : fields()) {
    ElementSampler s(f, small_spec());
    for (const auto& lvl : levels()) {
      const Element one = Element::one(f, lvl);
      for (int i = 0; i < 10; ++i) {
        Element x = s.sample(lvl, rng), y = s.sample(lvl, rng), z = s.sample(lvl, rng);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x + y == y + x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * one == x);
        CHECK((x - x).is_zero());

        Element sx = quasi_inverse(x);
        CHECK(x * sx * x == x);
        CHECK(sx * x * sx == sx);

        auto fac = unit_idempotent_factorization(x);
        CHECK(fac.idempotent * fac.idempotent == fac.idempotent);
        CHECK(fac.unit * fac.unit_inverse == one);
        CHECK(fac.unit * fac.idempotent == x);

        auto dx = loewy_depth(x), dy = loewy_depth(y);
        if (!(x * y).is_zero()) CHECK(*loewy_depth(x * y) <= std::min(*dx, *dy));
        if (!(x + y).is_zero()) {
          auto bound = !dx ? *dy : !dy ? *dx : std::max(*dx, *dy);
          CHECK(*loewy_depth(x + y) <= bound);
        }
      }
      CHECK(loewy_depth(one) == lvl);
    }
  }
}

TEST_CASE("depth zero is the socle") {
  // Rebuild depth-0 elements from injected socle atoms at levels 1 and 2.
  Rng rng(99);
  ElementSampler s(Q, small_spec());
  int socle_hits = 0;
  for (const auto& lvl : {L1, L2}) {
    for (int i = 0; i < 400; ++i) {
      Element x = s.sample(lvl, rng);
      if (x.is_zero()) continue;
      Element rebuilt = Element::zero(Q, lvl);
      bool decomposable = x.constant().is_zero();
      for (const auto& d : x.deviations()) {
        if (!decomposable) break;
        if (lvl == L1) {
          rebuilt = rebuilt + inject(L1, d.coord, d.value);
          continue;
        }
        if (!d.value.constant().is_zero()) {
          decomposable = false;
          break;
        }
        for (const auto& inner : d.value.deviations()) {
          rebuilt = rebuilt + inject(L2, d.coord, inject(L1, inner.coord, inner.value));
        }
      }
      decomposable = decomposable && rebuilt == x;
      CHECK((loewy_depth(x) == L0) == decomposable);
      socle_hits += decomposable ? 1 : 0;
    }
  }
  CHECK(socle_hits > 20);
}

TEST_CASE("swallow isomorphisms are ring isomorphisms") {
  Rng rng(31);
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"0", "1"}, {"0", "2"}, {"1", "3"}, {"0", "w"}, {"2", "w"}, {"w", "w+1"}, {"1", "w+2"}, {"w+1", "w*2"},
      {"3", "w^2"}};
  for (const auto& f : {Q, FieldDescriptor::prime(5)}) {
    ElementSampler s(f, small_spec());
    for (auto [b, a] : pairs) {
      Ordinal beta = Ordinal::parse(b), alpha = Ordinal::parse(a);
      const Element ob = Element::one(f, beta), oa = Element::one(f, alpha);
      CHECK(swallow_forward(ob, oa) == oa);
      for (int i = 0; i < 40; ++i) {
        Element x1 = s.sample(beta, rng), y1 = s.sample(alpha, rng);
        Element x2 = s.sample(beta, rng), y2 = s.sample(alpha, rng);
        Element z1 = swallow_forward(x1, y1), z2 = swallow_forward(x2, y2);
        CHECK(swallow_backward(beta, z1) == std::pair{x1, y1});
        CHECK(swallow_forward(swallow_backward(beta, y1).first, swallow_backward(beta, y1).second) == y1);
        CHECK(swallow_forward(x1 + x2, y1 + y2) == z1 + z2);
        CHECK(swallow_forward(x1 * x2, y1 * y2) == z1 * z2);
        Element zero_b = Element::zero(f, beta);
        CHECK(loewy_depth(swallow_forward(zero_b, y1)) == loewy_depth(y1));
      }
    }
  }
}

TEST_CASE("ideal idempotent contract") {
  Rng rng(5);
  for (const auto& f : fields()) {
    ElementSampler s(f, small_spec());
    for (const auto& lvl : levels()) {
      std::vector<Element> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(s.sample(lvl, rng));
      auto r = ideal_idempotent(f, lvl, gens);
      CHECK(r.idempotent * r.idempotent == r.idempotent);
      Element witness = Element::zero(f, lvl);
      for (std::size_t k = 0; k < gens.size(); ++k) {
        CHECK(r.idempotent * gens[k] == gens[k]);
        witness = witness + r.coefficients[k] * gens[k];
      }
      CHECK(witness == r.idempotent);
    }
  }
}

TEST_CASE("oracle separates distinct elements") {
  Rng rng(3);
  ElementSampler s(Q, small_spec());
  for (int i = 0; i < 200; ++i) {
    std::array<Element, 2> xy{s.sample(W + L1, rng), s.sample(W + L1, rng)};
    CHECK(pointwise_equal(xy[0], xy[1], oracle::probe_paths(xy)) == (xy[0] == xy[1]));
  }
}
