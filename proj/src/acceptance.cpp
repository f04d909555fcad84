#include "loewy/acceptance.hpp"

#include <chrono>
#include <iostream>
#include <type_traits>

#include "loewy/error.hpp"
#include "loewy/expr.hpp"
#include "loewy/injectivity.hpp"
#include "loewy/twisted.hpp"

namespace loewy {

namespace {

// Sample sizes. Arithmetic is exact, so every comparison has tolerance 0.
constexpr std::uint64_t kRingTriples = 1000;
constexpr std::uint64_t kRegularitySamples = 10000;
constexpr std::uint64_t kDepthSamples = 1000;
constexpr std::uint64_t kBasisTarget = 50;
constexpr std::uint64_t kConormedSamples = 1000;
constexpr std::uint64_t kSwallowPairs = 1000;
constexpr std::uint64_t kAugmentationPairs = 1000;
constexpr std::uint64_t kTwistedSamples = 1000;
constexpr std::uint64_t kInjectivityQueries = 1000;
constexpr std::uint64_t kRoundTrips = 1000;
constexpr int kRoundTripDepth = 4;

const char* const kTitles[] = {
    "",
    "ring axioms",
    "regularity and unit-idempotent factorization",
    "Loewy depth and dimension sequences",
    "strong multiplicative closure",
    "conormed property",
    "swallow isomorphisms",
    "finite fields and finite products",
    "augmentation",
    "twisted algebra",
    "injectivity verdicts",
    "expression round-trip and aggregate",
};

std::vector<FieldDescriptor> grid_fields() {
  return {FieldDescriptor::rationals(), FieldDescriptor::prime(2), FieldDescriptor::prime(5),
          FieldDescriptor::rational_functions(2)};
}

std::vector<Ordinal> grid_levels() {
  std::vector<Ordinal> out;
  for (const char* s : {"0", "1", "2", "3", "w", "w+1", "w+2", "w*2", "w^2"}) out.push_back(Ordinal::parse(s));
  return out;
}

// Independent stream per (criterion, configuration).
Rng stream(std::uint64_t seed, int criterion, std::uint64_t config) {
  return Rng(seed ^ (static_cast<std::uint64_t>(criterion) * 0x9E3779B97F4A7C15ULL) ^ (config * 0xBF58476D1CE4E5B9ULL));
}

// `what` is a message or a callable producing one, evaluated only on failure.
template <class F>
void expect(CheckReport& r, bool ok, F&& what) {
  ++r.checked;
  if (ok) return;
  if constexpr (std::is_invocable_v<F>) {
    r.fail(what());
  } else {
    r.fail(std::string(what));
  }
}

std::string ctx(const AlgebraDescriptor& d, const std::string& law) { return d.to_string() + ": " + law; }

// ---------------------------------------------------------------------------

void ring_axioms(CheckReport& r, std::uint64_t seed) {
  std::uint64_t i = 0;
  for (const auto& d : acceptance_grid()) {
    Rng rng = stream(seed, 1, i++);
    ElementSampler s(d.field, RandomSpec{});
    const auto zero = TupleElement::zero(d), one = TupleElement::one(d);
    for (std::uint64_t n = 0; n < kRingTriples; ++n) {
      auto a = s.sample(d, rng), b = s.sample(d, rng), c = s.sample(d, rng);
      bool ok = a + b == b + a && a * b == b * a && (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) &&
                a * (b + c) == a * b + a * c && a + zero == a && a * one == a && (a + (-a)).is_zero() &&
                (a * zero).is_zero();
      expect(r, ok, [&] { return ctx(d, "axiom on a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string()); });
    }
  }
}

void regularity(CheckReport& r, std::uint64_t seed) {
  std::uint64_t i = 0;
  for (const auto& d : acceptance_grid()) {
    Rng rng = stream(seed, 2, i++);
    ElementSampler s(d.field, RandomSpec{});
    const auto one = TupleElement::one(d);
    for (std::uint64_t n = 0; n < kRegularitySamples; ++n) {
      auto x = s.sample(d, rng);
      auto q = quasi_inverse(x);
      auto f = unit_idempotent_factorization(x);
      bool ok = x * q * x == x && q * x * q == q && f.idempotent * f.idempotent == f.idempotent &&
                f.unit * f.unit_inverse == one && f.unit * f.idempotent == x;
      expect(r, ok, [&] { return ctx(d, "regularity at " + x.to_string()); });
    }
  }
}

void depth_invariants(CheckReport& r, std::uint64_t seed) {
  std::uint64_t i = 0;
  for (const auto& d : acceptance_grid()) {
    Rng rng = stream(seed, 3, i++);
    auto depth_one = loewy_depth(TupleElement::one(d));
    expect(r, depth_one && *depth_one == d.level, ctx(d, "depth of one"));
    DimensionSequence ds = dimension_sequence(d);
    LayerInfo top = ds.layer(d.level);
    bool shape = ds.level == d.level && !top.aleph0 && top.count == d.width && top.rank == 1;
    if (!d.level.is_zero()) {
      for (const auto& g : small_ordinals_below(d.level, 2, d.level)) {
        LayerInfo l = ds.layer(g);
        shape = shape && l.aleph0 && l.rank == 1 && l.field == d.field;
      }
    }
    expect(r, shape, [&] { return ctx(d, "dimension sequence " + ds.to_string()); });
    ElementSampler s(d.field, RandomSpec{});
    for (std::uint64_t n = 0; n < kDepthSamples; ++n) {
      auto x = s.sample(d, rng), y = s.sample(d, rng);
      auto dx = loewy_depth(x), dy = loewy_depth(y), ds_ = loewy_depth(x + y), dp = loewy_depth(x * y);
      bool ok = true;
      if (dx && dy) {
        ok = (!ds_ || *ds_ <= std::max(*dx, *dy)) && (!dp || *dp <= std::min(*dx, *dy));
      }
      expect(r, ok, [&] { return ctx(d, "sub-additivity at x=" + x.to_string() + " y=" + y.to_string()); });
    }
  }
}

std::vector<AlgebraDescriptor> basis_grid() {
  std::vector<AlgebraDescriptor> out;
  for (const auto& f : {FieldDescriptor::rationals(), FieldDescriptor::prime(2)}) {
    for (const auto& l : grid_levels()) {
      for (std::uint32_t w : {1U, 2U}) out.emplace_back(f, l, w);
    }
  }
  return out;
}

void closure(CheckReport& r, std::vector<std::string>& notes) {
  for (const auto& d : basis_grid()) {
    BasisBudget b = budget_for(d, kBasisTarget);
    CheckReport c = closure_check(d, b);
    const auto n = enumerate_indices(d, b).size();
    if (n < kBasisTarget) notes.push_back(d.to_string() + ": whole basis has " + std::to_string(n) + " elements");
    r.checked += c.checked;
    r.skipped += c.skipped;
    if (!c.passed) r.fail(c.summary());
    expect(r, n >= kBasisTarget || d.level.is_zero(), [&] { return ctx(d, "budget reached only " + std::to_string(n) + " indices"); });
  }
}

void conormed(CheckReport& r, std::uint64_t seed) {
  std::uint64_t i = 0;
  for (const auto& d : acceptance_grid()) {
    CheckReport c = conormed_check(d, std::nullopt, kConormedSamples, seed + 5000 + i++);
    r.checked += c.checked;
    r.skipped += c.skipped;
    if (!c.passed) r.fail(c.summary());
  }
}

void swallow(CheckReport& r, std::uint64_t seed) {
  const std::pair<const char*, const char*> pairs[] = {{"0", "1"}, {"0", "2"}, {"1", "2"},
                                                       {"2", "w"}, {"0", "w+2"}, {"w", "w*2"}};
  std::uint64_t i = 0;
  for (const auto& f : grid_fields()) {
    for (auto [bs, as] : pairs) {
      const Ordinal beta = Ordinal::parse(bs), alpha = Ordinal::parse(as);
      Rng rng = stream(seed, 6, i++);
      ElementSampler s(f, RandomSpec{});
      const std::string where = "swallow " + std::string(bs) + " into " + as + " over " + f.to_string();
      expect(r, swallow_forward(Element::one(f, beta), Element::one(f, alpha)) == Element::one(f, alpha), [&] { return
             where + ": unit"; });
      for (std::uint64_t n = 0; n < kSwallowPairs; ++n) {
        Element x1 = s.sample(beta, rng), x2 = s.sample(beta, rng);
        Element y1 = s.sample(alpha, rng), y2 = s.sample(alpha, rng);
        Element z1 = swallow_forward(x1, y1), z2 = swallow_forward(x2, y2);
        bool ok = swallow_backward(beta, z1) == std::pair{x1, y1} &&
                  swallow_forward(x1 + x2, y1 + y2) == z1 + z2 && swallow_forward(x1 * x2, y1 * y2) == z1 * z2;
        Element z = s.sample(alpha, rng);
        auto [bx, by] = swallow_backward(beta, z);
        ok = ok && swallow_forward(bx, by) == z;
        expect(r, ok, [&] { return where + " at x=" + x1.to_string() + " y=" + y1.to_string(); });
      }
    }
  }
}

void finite_fields(CheckReport& r) {
  for (auto [p, n] : {std::pair{2ULL, 2U}, {2ULL, 3U}, {3ULL, 2U}}) {
    auto s = finite_field_mult_basis_search(p, n, 256, SearchMode::Naive);
    expect(r, s.bases.empty() && s.examined > 0, [&] { return
           "F_" + std::to_string(p) + "^" + std::to_string(n) + " has a multiplicative basis"; });
    auto pruned = finite_field_mult_basis_search(p, n);
    expect(r, pruned.bases.empty(), [&] { return "pruned search disagrees for p=" + std::to_string(p); });
  }
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    auto s = finite_field_mult_basis_search(p, 1);
    expect(r, s.bases == std::vector<std::vector<std::uint32_t>>{{1}}, [&] { return "F_p over F_p for p=" + std::to_string(p); });
  }
  for (std::uint32_t n = 1; n <= 6; ++n) {
    auto b = finite_product_basis(n);
    r.checked += b.products_checked;
    if (!b.closed || b.vectors.size() != n) r.fail("K^" + std::to_string(n) + " product basis not closed");
  }
}

void augmentation_suite(CheckReport& r, std::uint64_t seed) {
  std::uint64_t i = 0;
  for (const auto& d : acceptance_grid()) {
    Rng rng = stream(seed, 8, i++);
    ElementSampler s(d.field, RandomSpec{});
    expect(r, augmentation(TupleElement::one(d)).is_one(), ctx(d, "augmentation of one"));
    for (std::uint64_t n = 0; n < kAugmentationPairs; ++n) {
      auto x = s.sample(d, rng), y = s.sample(d, rng);
      FieldValue k = random_scalar(d.field, rng);
      FieldValue ax = augmentation(x), ay = augmentation(y);
      bool ok = augmentation(x + y) == ax + ay && augmentation(x * y) == ax * ay && augmentation(k * x) == k * ax;
      expect(r, ok, [&] { return ctx(d, "augmentation at x=" + x.to_string() + " y=" + y.to_string()); });
    }
  }
  for (const auto& d : basis_grid()) {
    for (const auto& [idx, b] : enumerate_basis(d, budget_for(d, kBasisTarget))) {
      expect(r, augmentation(b).is_one(), [&] { return ctx(d, "augmentation of b(" + idx.to_string() + ")"); });
    }
  }
}

void twisted_suite(CheckReport& r, std::uint64_t seed) {
  const auto f2x = FieldDescriptor::rational_functions(2);
  const Ordinal l1 = Ordinal::finite(1);
  std::uint64_t i = 0;
  for (const auto& f : {f2x, FieldDescriptor::rational_functions(3), FieldDescriptor::prime(5)}) {
    Rng rng = stream(seed, 9, i++);
    ElementSampler s(f, RandomSpec{});
    expect(r, psi_embed(Element::one(f, l1)) == TwistedElement::one(f), [&] { return "psi(1) over " + f.to_string(); });
    for (std::uint64_t n = 0; n < kTwistedSamples; ++n) {
      Element x = s.sample(l1, rng), y = s.sample(l1, rng);
      TwistedElement px = psi_embed(x), py = psi_embed(y);
      bool ok = psi_embed(x + y) == px + py && psi_embed(x * y) == px * py && (px == py) == (x == y) &&
                psi_preimage(px) == x && t_membership(px.to_generic());
      expect(r, ok, [&] { return "psi over " + f.to_string() + " at x=" + x.to_string() + " y=" + y.to_string(); });
    }
  }
  auto tail = [&](const char* k) { return Element::constant(l1, FieldValue::parse(f2x, k)); };
  expect(r, !t_membership(tail("x")), "tail x is a member");
  expect(r, t_membership(tail("x^2+1")), "tail (x+1)^2 is not a member");
  expect(r, factor_equivalent(t_dimension_sequence(f2x), dimension_sequence(AlgebraDescriptor(f2x, l1))),
         "dimension sequences differ");
}

void injectivity_suite(CheckReport& r, std::uint64_t seed) {
  using C = SymbolicCardinal;
  const auto q = FieldDescriptor::rationals();
  const Ordinal l1 = Ordinal::finite(1);
  expect(r, gamma() == C::kappa_plus(), "gamma is not kappa+");
  for (const auto& lam : {C::aleph(0), C::aleph(1), C::kappa()}) {
    auto [ideal, hom] = strictness_witness(lam);
    expect(r, std::holds_alternative<Fails>(baer_extend(lam, ideal, hom)), [&] { return
           "strictness witness extends at " + lam.to_string(); });
  }
  Rng rng = stream(seed, 10, 0);
  RandomSpec spec;
  spec.max_coord = 5;
  ElementSampler s(q, spec);
  const C lambdas[] = {C::aleph(0), C::aleph(1), C::aleph(3), C::kappa(), C::kappa_plus()};
  for (std::uint64_t n = 0; n < kInjectivityQueries; ++n) {
    std::vector<Element> gens;
    for (std::uint64_t k = 1 + rng.below(3); k > 0; --k) gens.push_back(s.sample(l1, rng));
    Element e = ideal_idempotent(q, l1, gens).idempotent;
    FiniteTable table;
    for (std::uint64_t a = 0; a <= spec.max_coord + 1; ++a) {
      if (e.value_at(Ordinal::finite(a)).constant().is_one() && rng.chance(1, 2)) {
        table.entries.emplace(a, MElement::explicit_values({{a, random_scalar(q, rng)}}));
      }
    }
    const C lam = lambdas[rng.below(std::size(lambdas))];
    Verdict v = baer_extend(lam, FinitelyGenerated{gens}, table);
    bool ok = std::holds_alternative<Extends>(v) && m_membership(std::get<Extends>(v).witness, lam);
    if (ok) {
      // m * e_a = phi(e_a) on every listed a
      const auto& m = std::get<Extends>(v).witness;
      for (const auto& [a, entry] : table.entries) {
        auto it = m.values.find(a);
        auto want = entry.values.find(a);
        FieldValue got = it == m.values.end() ? FieldValue::zero(q) : it->second;
        ok = ok && got == (want == entry.values.end() ? FieldValue::zero(q) : want->second);
      }
    }
    expect(r, ok, [&] { return "FG query at " + lam.to_string() + " gave " + verdict_to_string(v); });

    // kappa+ never fails, whatever the ideal
    IdealDescriptor ideal = FinitelyGenerated{gens};
    if (rng.chance(1, 2)) {
      const C card[] = {C::aleph(0), C::aleph(2), C::kappa()};
      ideal = SocleDirectSum{SupportDescriptor::symbolic(card[rng.below(3)], "A")};
    }
    HomDescriptor hom = Inclusion{};
    if (std::holds_alternative<FinitelyGenerated>(ideal) && rng.chance(1, 2)) hom = table;
    Verdict top = baer_extend(C::kappa_plus(), ideal, hom);
    expect(r, !std::holds_alternative<Fails>(top), [&] { return "kappa+ query " + ideal_to_string(ideal) + " failed"; });
  }
}

void round_trip(CheckReport& r, std::uint64_t seed, const std::vector<CriterionResult>& earlier) {
  std::uint64_t i = 0;
  for (const auto& f : {FieldDescriptor::rationals(), FieldDescriptor::prime(5), FieldDescriptor::rational_functions(2)}) {
    Rng rng = stream(seed, 11, i++);
    for (std::uint64_t n = 0; n < kRoundTrips; ++n) {
      ExprPtr e = random_expr(f, rng, kRoundTripDepth);
      std::string text = print_expr(*e);
      bool ok = false;
      try {
        ok = expr_equal(*parse_expr(f, text), *e);
      } catch (const Error&) {
      }
      expect(r, ok, [&] { return "round-trip of " + text; });
    }
  }
  for (const auto& c : earlier) {
    if (c.id >= 1 && c.id <= 10) expect(r, c.report.passed, [&] { return "criterion " + std::to_string(c.id) + " failed"; });
  }
}

}  // namespace

std::vector<AlgebraDescriptor> acceptance_grid() {
  std::vector<AlgebraDescriptor> out;
  for (const auto& f : grid_fields()) {
    for (const auto& l : grid_levels()) {
      for (std::uint32_t w : {1U, 2U}) out.emplace_back(f, l, w);
    }
  }
  return out;
}

BasisBudget budget_for(const AlgebraDescriptor& desc, std::uint64_t target) {
  BasisBudget b;
  b.max_depth = 3;
  std::size_t last = 0;
  for (std::uint64_t c = 1; c <= 64; ++c) {
    b.max_coord = c;
    b.max_limit_coord = Ordinal::parse("w*" + std::to_string(c) + "+" + std::to_string(c));
    std::size_t n = enumerate_indices(desc, b).size();
    if (n >= target || (n == last && c > 4)) break;
    last = n;
  }
  b.max_count = target;
  return b;
}

std::string CriterionResult::line() const {
  char t[32];
  std::snprintf(t, sizeof t, "%.1fs", seconds);
  std::string out = "criterion " + std::to_string(id) + " [" + title + "]: " + (report.passed ? "PASS" : "FAIL") +
                    " (" + std::to_string(report.checked) + " checks";
  if (report.failures != 0) out += ", " + std::to_string(report.failures) + " failures";
  out += ", " + std::string(t) + ")";
  if (!report.counterexample.empty()) out += " first failure: " + report.counterexample;
  return out;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts, const std::vector<CriterionResult>& earlier) {
  if (id < 1 || id > 11) throw Error(ErrorKind::Usage, "no acceptance criterion " + std::to_string(id));
  CriterionResult c;
  c.id = id;
  c.title = kTitles[id];
  c.report.name = c.title;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: ring_axioms(c.report, opts.seed); break;
      case 2: regularity(c.report, opts.seed); break;
      case 3: depth_invariants(c.report, opts.seed); break;
      case 4: closure(c.report, c.notes); break;
      case 5: conormed(c.report, opts.seed); break;
      case 6: swallow(c.report, opts.seed); break;
      case 7: finite_fields(c.report); break;
      case 8: augmentation_suite(c.report, opts.seed); break;
      case 9: twisted_suite(c.report, opts.seed); break;
      case 10: injectivity_suite(c.report, opts.seed); break;
      case 11: round_trip(c.report, opts.seed, earlier); break;
    }
  } catch (const std::exception& e) {
    c.report.fail(std::string("exception: ") + e.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<int> ids = opts.only;
  if (ids.empty()) {
    for (int i = 1; i <= 11; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id, opts, out));
    if (opts.verbose) std::cerr << out.back().line() << '\n';
  }
  return out;
}

}  // namespace loewy
