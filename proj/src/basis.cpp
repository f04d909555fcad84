#include "loewy/basis.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>

#include "loewy/error.hpp"

namespace loewy {

// ---------------------------------------------------------------------------
// BasisIndex

std::strong_ordering operator<=>(const IndexStep& a, const IndexStep& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.coord <=> b.coord; c != 0) return c;
  return a.factor <=> b.factor;
}

std::strong_ordering operator<=>(const BasisIndex& a, const BasisIndex& b) {
  return std::lexicographical_compare_three_way(a.steps_.begin(), a.steps_.end(), b.steps_.begin(),
                                                b.steps_.end());
}

BasisIndex BasisIndex::prepend(IndexStep s) const {
  BasisIndex out;
  out.steps_.reserve(steps_.size() + 1);
  out.steps_.push_back(std::move(s));
  out.steps_.insert(out.steps_.end(), steps_.begin(), steps_.end());
  return out;
}

BasisIndex BasisIndex::c0(BasisIndex inner) { return inner.prepend({StepKind::C0, {}, 0}); }

BasisIndex BasisIndex::mix(Ordinal coord, BasisIndex inner) {
  if (coord.is_zero()) throw Error(ErrorKind::BadIndex, "Mix coordinate must be nonzero");
  return inner.prepend({StepKind::Mix, std::move(coord), 0});
}

BasisIndex BasisIndex::prod0(BasisIndex inner) { return inner.prepend({StepKind::Prod0, {}, 0}); }

BasisIndex BasisIndex::prod_mix(std::uint32_t factor, BasisIndex inner) {
  if (factor == 0) throw Error(ErrorKind::BadIndex, "ProdMix factor must be nonzero");
  return inner.prepend({StepKind::ProdMix, {}, factor});
}

BasisIndex BasisIndex::tail() const {
  BasisIndex out;
  out.steps_.assign(steps_.begin() + 1, steps_.end());
  return out;
}

std::string BasisIndex::to_string() const {
  std::string out;
  for (const auto& s : steps_) {
    switch (s.kind) {
      case StepKind::C0: out += "C0."; break;
      case StepKind::Mix: out += "M" + s.coord.to_string() + "."; break;
      case StepKind::Prod0: out += "P0."; break;
      case StepKind::ProdMix: out += "P" + std::to_string(s.factor) + "."; break;
    }
  }
  return out + "U";
}

BasisIndex BasisIndex::parse(std::string_view text) {
  std::vector<IndexStep> steps;
  std::size_t pos = 0;
  auto segment_end = [&](std::size_t from) {
    std::size_t dot = text.find('.', from);
    if (dot == std::string_view::npos) throw ParseError(text.size(), "expected '.' in basis index");
    return dot;
  };
  while (true) {
    if (pos >= text.size()) throw ParseError(pos, "basis index must end in 'U'");
    const char c = text[pos];
    if (c == 'U') {
      if (pos + 1 != text.size()) throw ParseError(pos + 1, "trailing characters after 'U'");
      break;
    }
    if (c == 'C') {
      if (text.substr(pos, 3) != "C0.") throw ParseError(pos, "expected 'C0.'");
      steps.push_back({StepKind::C0, {}, 0});
      pos += 3;
    } else if (c == 'M') {
      std::size_t dot = segment_end(pos + 1);
      Ordinal t;
      try {
        t = Ordinal::parse(text.substr(pos + 1, dot - pos - 1));
      } catch (const ParseError& e) {
        throw ParseError(pos + 1 + e.position(), "bad Mix coordinate");
      }
      if (t.is_zero()) throw ParseError(pos + 1, "Mix coordinate must be nonzero (use C0)");
      steps.push_back({StepKind::Mix, std::move(t), 0});
      pos = dot + 1;
    } else if (c == 'P') {
      std::size_t dot = segment_end(pos + 1);
      std::string_view digits = text.substr(pos + 1, dot - pos - 1);
      if (digits.empty() || digits.size() > 9 ||
          !std::all_of(digits.begin(), digits.end(), [](char d) { return d >= '0' && d <= '9'; })) {
        throw ParseError(pos + 1, "expected factor number after 'P'");
      }
      auto k = static_cast<std::uint32_t>(std::stoul(std::string(digits)));
      steps.push_back(k == 0 ? IndexStep{StepKind::Prod0, {}, 0} : IndexStep{StepKind::ProdMix, {}, k});
      pos = dot + 1;
    } else {
      throw ParseError(pos, std::string("unexpected '") + c + "' in basis index");
    }
  }
  BasisIndex out;
  out.steps_ = std::move(steps);
  return out;
}

// ---------------------------------------------------------------------------
// Validation and elements

namespace {

[[noreturn]] void bad_index(const BasisIndex& idx, const std::string& why) {
  throw Error(ErrorKind::BadIndex, idx.to_string() + ": " + why);
}

bool is_product_step(const IndexStep& s) { return s.kind == StepKind::Prod0 || s.kind == StepKind::ProdMix; }

/// Level of the component the step descends into.
Ordinal step_level(const Ordinal& level, const IndexStep& s) {
  return component_level(level, s.kind == StepKind::C0 ? Ordinal{} : s.coord);
}

void validate_width1(const Ordinal& level, const BasisIndex& full, std::size_t from) {
  Ordinal lvl = level;
  const auto& steps = full.steps();
  for (std::size_t k = from; k < steps.size(); ++k) {
    const auto& s = steps[k];
    if (is_product_step(s)) bad_index(full, "product step below the outermost layer");
    if (lvl.is_zero()) bad_index(full, "level 0 has only the index U");
    if (s.kind == StepKind::Mix && (s.coord.is_zero() || !is_valid_coord(lvl, s.coord))) {
      bad_index(full, "coordinate " + s.coord.to_string() + " invalid at level " + lvl.to_string());
    }
    lvl = step_level(lvl, s);
  }
}

Element width1_element(const FieldDescriptor& f, const Ordinal& level, const std::vector<IndexStep>& steps,
                       std::size_t k) {
  if (k == steps.size()) return Element::one(f, level);
  const auto& s = steps[k];
  Ordinal comp = step_level(level, s);
  Element inner = width1_element(f, comp, steps, k + 1);
  if (s.kind == StepKind::C0) return inject(level, Ordinal{}, inner);
  return inject(level, Ordinal{}, socle_idempotent(f, component_level(level, Ordinal{}))) +
         inject(level, s.coord, inner);
}

}  // namespace

void validate_index(const AlgebraDescriptor& desc, const BasisIndex& idx) {
  if (desc.width == 1) {
    validate_width1(desc.level, idx, 0);
    return;
  }
  if (idx.is_unit() || !is_product_step(idx.head())) {
    bad_index(idx, "width " + std::to_string(desc.width) + " needs a leading P step");
  }
  if (idx.head().kind == StepKind::ProdMix && idx.head().factor >= desc.width) {
    bad_index(idx, "factor out of range for width " + std::to_string(desc.width));
  }
  validate_width1(desc.level, idx, 1);
}

Element socle_idempotent(const FieldDescriptor& f, const Ordinal& level) {
  if (level.is_zero()) return Element::one(f, level);
  if (level.is_limit()) return inject(level, Ordinal{}, Element::one(f, Ordinal{}));
  return inject(level, Ordinal{}, socle_idempotent(f, level.predecessor()));
}

BasisIndex socle_index(const Ordinal& level) {
  if (level.is_zero()) return BasisIndex::unit();
  if (level.is_limit()) return BasisIndex::c0(BasisIndex::unit());
  return BasisIndex::c0(socle_index(level.predecessor()));
}

Element basis_element(const FieldDescriptor& f, const Ordinal& level, const BasisIndex& idx) {
  validate_width1(level, idx, 0);
  return width1_element(f, level, idx.steps(), 0);
}

TupleElement basis_element(const AlgebraDescriptor& desc, const BasisIndex& idx) {
  validate_index(desc, idx);
  if (desc.width == 1) return TupleElement({width1_element(desc.field, desc.level, idx.steps(), 0)});
  std::vector<Element> comps(desc.width, Element::zero(desc.field, desc.level));
  Element inner = width1_element(desc.field, desc.level, idx.steps(), 1);
  if (idx.head().kind == StepKind::Prod0) {
    comps[0] = std::move(inner);
  } else {
    comps[0] = socle_idempotent(desc.field, desc.level);
    comps[idx.head().factor] = std::move(inner);
  }
  return TupleElement(std::move(comps));
}

std::optional<BasisIndex> basis_membership(const Element& x) {
  const FieldDescriptor& f = x.field();
  if (x.level().is_zero()) {
    if (x.constant() == FieldValue::one(f)) return BasisIndex::unit();
    return std::nullopt;
  }
  const auto& devs = x.deviations();
  if (x.constant() == FieldValue::one(f)) {
    if (devs.empty()) return BasisIndex::unit();
    return std::nullopt;
  }
  if (!x.constant().is_zero() || devs.empty() || !devs[0].coord.is_zero()) return std::nullopt;
  if (devs.size() == 1) {
    auto inner = basis_membership(devs[0].value);
    if (!inner) return std::nullopt;
    return BasisIndex::c0(std::move(*inner));
  }
  if (devs.size() == 2 && devs[0].value == socle_idempotent(f, component_level(x.level(), Ordinal{}))) {
    auto inner = basis_membership(devs[1].value);
    if (!inner) return std::nullopt;
    return BasisIndex::mix(devs[1].coord, std::move(*inner));
  }
  return std::nullopt;
}

std::optional<BasisIndex> basis_membership(const TupleElement& x) {
  if (x.width() == 1) return basis_membership(x[0]);
  std::vector<std::uint32_t> nonzero_rest;
  for (std::uint32_t k = 1; k < x.width(); ++k) {
    if (!x[k].is_zero()) nonzero_rest.push_back(k);
  }
  if (nonzero_rest.empty()) {
    auto inner = basis_membership(x[0]);
    if (!inner) return std::nullopt;
    return BasisIndex::prod0(std::move(*inner));
  }
  if (nonzero_rest.size() != 1 || !(x[0] == socle_idempotent(x.field(), x.level()))) return std::nullopt;
  auto inner = basis_membership(x[nonzero_rest[0]]);
  if (!inner) return std::nullopt;
  return BasisIndex::prod_mix(nonzero_rest[0], std::move(*inner));
}

// ---------------------------------------------------------------------------
// Products and depth

namespace {

BasisIndex product1(const Ordinal& level, const BasisIndex& i, const BasisIndex& j) {
  if (i.is_unit()) return j;
  if (j.is_unit()) return i;
  const Ordinal comp0 = component_level(level, Ordinal{});
  const IndexStep& a = i.head();
  const IndexStep& b = j.head();
  if (a.kind == StepKind::C0 && b.kind == StepKind::C0) return BasisIndex::c0(product1(comp0, i.tail(), j.tail()));
  // C0(a) * Mix(t, b): only coordinate 0 survives, where Mix contributes the socle idempotent.
  if (a.kind == StepKind::C0) return BasisIndex::c0(product1(comp0, i.tail(), socle_index(comp0)));
  if (b.kind == StepKind::C0) return BasisIndex::c0(product1(comp0, socle_index(comp0), j.tail()));
  if (a.coord == b.coord) {
    return BasisIndex::mix(a.coord, product1(component_level(level, a.coord), i.tail(), j.tail()));
  }
  return BasisIndex::c0(socle_index(comp0));
}

Ordinal depth1(const Ordinal& level, const BasisIndex& idx) {
  Ordinal lvl = level;
  for (const auto& s : idx.steps()) lvl = step_level(lvl, s);
  // The socle idempotent added by Mix steps has depth 0, so the path's end decides.
  return lvl;
}

}  // namespace

BasisIndex basis_product(const AlgebraDescriptor& desc, const BasisIndex& i, const BasisIndex& j) {
  validate_index(desc, i);
  validate_index(desc, j);
  if (desc.width == 1) return product1(desc.level, i, j);
  const IndexStep& a = i.head();
  const IndexStep& b = j.head();
  const BasisIndex socle = socle_index(desc.level);
  if (a.kind == StepKind::Prod0 && b.kind == StepKind::Prod0) {
    return BasisIndex::prod0(product1(desc.level, i.tail(), j.tail()));
  }
  if (a.kind == StepKind::Prod0) return BasisIndex::prod0(product1(desc.level, i.tail(), socle));
  if (b.kind == StepKind::Prod0) return BasisIndex::prod0(product1(desc.level, socle, j.tail()));
  if (a.factor == b.factor) return BasisIndex::prod_mix(a.factor, product1(desc.level, i.tail(), j.tail()));
  return BasisIndex::prod0(socle);
}

Ordinal basis_depth(const AlgebraDescriptor& desc, const BasisIndex& idx) {
  validate_index(desc, idx);
  if (desc.width == 1) return depth1(desc.level, idx);
  return depth1(desc.level, idx.tail());
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::vector<Ordinal> mix_coords(const Ordinal& level, const BasisBudget& budget) {
  std::vector<Ordinal> out;
  if (level.is_successor()) {
    for (std::uint64_t t = 1; t <= budget.max_coord; ++t) out.push_back(Ordinal::finite(t));
  } else if (level.is_limit()) {
    for (auto& t : small_ordinals_below(level, budget.max_coord, budget.max_limit_coord)) {
      if (!t.is_zero()) out.push_back(std::move(t));
    }
  }
  return out;
}

void enumerate1(const Ordinal& level, std::uint32_t depth_left, const BasisBudget& budget, std::size_t cap,
                std::vector<BasisIndex>& out) {
  if (out.size() >= cap) return;
  out.push_back(BasisIndex::unit());
  if (level.is_zero() || depth_left == 0) return;
  auto emit = [&](const Ordinal& comp, auto wrap) {
    std::vector<BasisIndex> sub;
    enumerate1(comp, depth_left - 1, budget, cap - out.size(), sub);
    for (auto& s : sub) out.push_back(wrap(std::move(s)));
  };
  emit(component_level(level, Ordinal{}), [](BasisIndex s) { return BasisIndex::c0(std::move(s)); });
  for (const auto& t : mix_coords(level, budget)) {
    if (out.size() >= cap) return;
    emit(component_level(level, t), [&t](BasisIndex s) { return BasisIndex::mix(t, std::move(s)); });
  }
}

}  // namespace

std::vector<BasisIndex> enumerate_indices(const AlgebraDescriptor& desc, const BasisBudget& budget) {
  const std::size_t cap = budget.max_count == 0 ? static_cast<std::size_t>(-1) : budget.max_count;
  std::vector<BasisIndex> out;
  if (desc.width == 1) {
    enumerate1(desc.level, budget.max_depth, budget, cap, out);
    return out;
  }
  std::vector<BasisIndex> inner;
  enumerate1(desc.level, budget.max_depth, budget, cap, inner);
  for (const auto& i : inner) {
    if (out.size() >= cap) return out;
    out.push_back(BasisIndex::prod0(i));
  }
  for (std::uint32_t k = 1; k < desc.width; ++k) {
    for (const auto& i : inner) {
      if (out.size() >= cap) return out;
      out.push_back(BasisIndex::prod_mix(k, i));
    }
  }
  return out;
}

std::vector<std::pair<BasisIndex, TupleElement>> enumerate_basis(const AlgebraDescriptor& desc,
                                                                 const BasisBudget& budget) {
  std::vector<std::pair<BasisIndex, TupleElement>> out;
  for (auto& idx : enumerate_indices(desc, budget)) {
    TupleElement e = basis_element(desc, idx);
    out.emplace_back(std::move(idx), std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coordinates

namespace {

using CoordMap = std::map<BasisIndex, FieldValue>;

void accumulate(CoordMap& m, const BasisIndex& idx, const FieldValue& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = m.try_emplace(idx, k);
  if (!inserted) it->second = it->second + k;
}

BasisCoords finish(CoordMap& m) {
  BasisCoords out;
  out.reserve(m.size());
  for (auto& [idx, k] : m) {
    if (!k.is_zero()) out.emplace_back(idx, std::move(k));
  }
  return out;
}

BasisCoords coords1(const Element& x) {
  const FieldDescriptor& f = x.field();
  CoordMap m;
  if (x.level().is_zero()) {
    accumulate(m, BasisIndex::unit(), x.constant());
    return finish(m);
  }
  accumulate(m, BasisIndex::unit(), x.constant());
  // inject(t, b) = Mix(t, b) - inject(0, e): every Mix term borrows its
  // coefficient from the socle idempotent at coordinate 0.
  FieldValue borrowed = FieldValue::zero(f);
  const Element* at0 = nullptr;
  for (const auto& d : x.deviations()) {
    if (d.coord.is_zero()) {
      at0 = &d.value;
      continue;
    }
    for (const auto& [j, k] : coords1(d.value)) {
      accumulate(m, BasisIndex::mix(d.coord, j), k);
      borrowed = borrowed + k;
    }
  }
  const Ordinal comp0 = component_level(x.level(), Ordinal{});
  if (at0 != nullptr) {
    for (const auto& [j, k] : coords1(*at0)) accumulate(m, BasisIndex::c0(j), k);
  }
  accumulate(m, BasisIndex::c0(socle_index(comp0)), -borrowed);
  return finish(m);
}

}  // namespace

BasisCoords to_basis_coords(const Element& x) { return coords1(x); }

BasisCoords to_basis_coords(const TupleElement& x) {
  if (x.width() == 1) return coords1(x[0]);
  CoordMap m;
  FieldValue borrowed = FieldValue::zero(x.field());
  for (std::uint32_t k = 1; k < x.width(); ++k) {
    for (const auto& [j, c] : coords1(x[k])) {
      accumulate(m, BasisIndex::prod_mix(k, j), c);
      borrowed = borrowed + c;
    }
  }
  for (const auto& [j, c] : coords1(x[0])) accumulate(m, BasisIndex::prod0(j), c);
  accumulate(m, BasisIndex::prod0(socle_index(x.level())), -borrowed);
  return finish(m);
}

namespace {

FieldValue coefficient_sum(const FieldDescriptor& f, const BasisCoords& coords) {
  FieldValue s = FieldValue::zero(f);
  for (const auto& [idx, k] : coords) s = s + k;
  return s;
}

}  // namespace

FieldValue augmentation(const Element& x) { return coefficient_sum(x.field(), to_basis_coords(x)); }

FieldValue augmentation(const TupleElement& x) { return coefficient_sum(x.field(), to_basis_coords(x)); }

TupleElement from_basis_coords(const AlgebraDescriptor& desc, const BasisCoords& coords) {
  TupleElement out = TupleElement::zero(desc);
  for (const auto& [idx, k] : coords) out = out + k * basis_element(desc, idx);
  return out;
}

std::string coords_to_string(const BasisCoords& coords) {
  std::string out = "{";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i != 0) out += ", ";
    out += coords[i].first.to_string() + ": " + coords[i].second.to_string();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Checks

std::string CheckReport::summary() const {
  std::string out = name + ": " + (passed ? "pass" : "FAIL") + " (" + std::to_string(checked) + " checked";
  if (skipped != 0) out += ", " + std::to_string(skipped) + " skipped";
  if (failures != 0) out += ", " + std::to_string(failures) + " failures";
  out += ")";
  if (!counterexample.empty()) out += "; first counterexample: " + counterexample;
  return out;
}

CheckReport closure_check(const AlgebraDescriptor& desc, const BasisBudget& budget) {
  CheckReport r;
  r.name = "closure " + desc.to_string();
  auto basis = enumerate_basis(desc, budget);
  for (const auto& [idx, b] : basis) {
    if (!(b * b == b)) r.fail(idx.to_string() + " is not idempotent");
    auto back = basis_membership(b);
    if (!back || !(*back == idx)) r.fail(idx.to_string() + " does not round-trip through membership");
  }
  for (const auto& [i, bi] : basis) {
    for (const auto& [j, bj] : basis) {
      ++r.checked;
      TupleElement prod = bi * bj;
      BasisIndex expected = basis_product(desc, i, j);
      auto found = basis_membership(prod);
      if (!found) {
        r.fail(i.to_string() + " * " + j.to_string() + " = " + prod.to_string() + " is not a basis element");
      } else if (!(*found == expected)) {
        r.fail(i.to_string() + " * " + j.to_string() + " is " + found->to_string() + ", basis_product says " +
               expected.to_string());
      }
    }
  }
  return r;
}

namespace {

/// Randomly strips constant tails so that low depths show up in samples.
Element lower(const Element& x, Rng& rng) {
  if (x.level().is_zero()) return x;
  Element y = rng.chance(1, 2) ? x.plus_constant(-x.constant()) : x;
  if (!rng.chance(1, 2)) return y;
  std::vector<Deviation> devs;
  for (const auto& d : y.deviations()) devs.push_back({d.coord, lower(d.value, rng)});
  return Element::make(y.level(), std::move(devs), y.constant());
}

}  // namespace

CheckReport conormed_check(const AlgebraDescriptor& desc, std::optional<Ordinal> gamma, std::uint64_t samples,
                           std::uint64_t seed) {
  CheckReport r;
  r.name = "conormed " + desc.to_string() + (gamma ? " gamma=" + gamma->to_string() : "");
  if (gamma && desc.level < *gamma) {
    throw Error(ErrorKind::BadOrdinals, "gamma " + gamma->to_string() + " above level " + desc.level.to_string());
  }
  Rng rng(seed);
  ElementSampler sampler(desc.field, RandomSpec{});
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::vector<Element> comps;
    for (std::uint32_t k = 0; k < desc.width; ++k) comps.push_back(lower(sampler.sample(desc.level, rng), rng));
    TupleElement x(std::move(comps));
    if (x.is_zero()) {
      ++r.skipped;
      continue;
    }
    Ordinal dx = *loewy_depth(x);
    if (gamma && !(dx < *gamma)) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    for (const auto& [idx, k] : to_basis_coords(x)) {
      Ordinal di = basis_depth(desc, idx);
      bool ok = gamma ? di < *gamma : di <= dx;
      if (!ok) {
        r.fail(x.to_string() + " (depth " + dx.to_string() + ") uses " + idx.to_string() + " of depth " +
               di.to_string());
        break;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Boolean view

BooleanView::BooleanView(const AlgebraDescriptor& desc) : desc_(desc) {
  if (!(desc.field == FieldDescriptor::prime(2))) {
    throw Error(ErrorKind::UnsupportedField, "Boolean view needs f2, got " + desc.field.to_string());
  }
}

Element BooleanView::complement(const Element& x) const { return Element::one(x.field(), x.level()) + x; }

// ---------------------------------------------------------------------------
// Cayley tables

CayleyTable cayley_table(const AlgebraDescriptor& desc, const BasisBudget& budget) {
  CayleyTable t;
  t.indices = enumerate_indices(desc, budget);
  t.products.reserve(t.indices.size());
  for (const auto& i : t.indices) {
    std::vector<BasisIndex> row;
    row.reserve(t.indices.size());
    for (const auto& j : t.indices) row.push_back(basis_product(desc, i, j));
    t.products.push_back(std::move(row));
  }
  return t;
}

std::string CayleyTable::to_csv() const {
  std::string out = "*";
  for (const auto& i : indices) out += "," + i.to_string();
  out += "\n";
  for (std::size_t r = 0; r < indices.size(); ++r) {
    out += indices[r].to_string();
    for (const auto& p : products[r]) out += "," + p.to_string();
    out += "\n";
  }
  return out;
}

std::string CayleyTable::to_dot() const {
  const std::size_t n = indices.size();
  // below[a][b]: a < b in the semilattice order (a*b = a, a != b)
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) below[a][b] = a != b && products[a][b] == indices[a];
  }
  std::string out = "digraph basis {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const auto& i : indices) out += "  \"" + i.to_string() + "\";\n";
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c) covered = !(below[a][c] && below[c][b]);
      if (covered) out += "  \"" + indices[a].to_string() + "\" -> \"" + indices[b].to_string() + "\";\n";
    }
  }
  return out + "}\n";
}

// ---------------------------------------------------------------------------
// Finite examples

FiniteProductBasis finite_product_basis(std::uint32_t n) {
  if (n == 0) throw Error(ErrorKind::Usage, "finite_product_basis needs n >= 1");
  FiniteProductBasis r;
  r.n = n;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<std::uint8_t> v(n, 0);
    v[0] = 1;
    v[i] = 1;
    r.vectors.push_back(std::move(v));
  }
  r.closed = true;
  for (const auto& a : r.vectors) {
    for (const auto& b : r.vectors) {
      ++r.products_checked;
      std::vector<std::uint8_t> prod(n);
      for (std::uint32_t k = 0; k < n; ++k) prod[k] = static_cast<std::uint8_t>(a[k] & b[k]);
      if (std::find(r.vectors.begin(), r.vectors.end(), prod) == r.vectors.end()) r.closed = false;
    }
  }
  return r;
}

FiniteField::FiniteField(std::uint64_t p, std::uint32_t n) : p_(p), n_(n), q_(1) {
  if (!is_prime(p)) throw Error(ErrorKind::UnsupportedField, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorKind::Usage, "extension degree must be at least 1");
  for (std::uint32_t i = 0; i < n; ++i) {
    q_ *= p;
    if (q_ > 4096) throw Error(ErrorKind::TooLarge, "finite field tables stop at 4096 elements");
  }
  for (std::uint64_t low = 0; low < q_; ++low) {
    std::vector<std::uint64_t> c;
    for (std::uint64_t v = low, i = 0; i < n; ++i, v /= p) c.push_back(v % p);
    c.push_back(1);
    FpPoly m(p, std::move(c));
    if (is_irreducible(m)) {
      modulus_ = std::move(m);
      break;
    }
  }
  auto to_poly = [&](std::uint64_t a) {
    std::vector<std::uint64_t> c;
    for (std::uint32_t i = 0; i < n; ++i, a /= p) c.push_back(a % p);
    return FpPoly(p, std::move(c));
  };
  auto encode = [&](const FpPoly& f) {
    std::uint64_t v = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) v = v * p + f.coeffs()[i];
    return static_cast<std::uint32_t>(v);
  };
  std::vector<FpPoly> polys;
  polys.reserve(q_);
  for (std::uint64_t a = 0; a < q_; ++a) polys.push_back(to_poly(a));
  table_.resize(q_ * q_);
  for (std::uint64_t a = 0; a < q_; ++a) {
    for (std::uint64_t b = a; b < q_; ++b) {
      auto v = encode((polys[a] * polys[b]).divmod(modulus_).second);
      table_[a * q_ + b] = v;
      table_[b * q_ + a] = v;
    }
  }
}

std::vector<std::uint64_t> FiniteField::digits(std::uint32_t a) const {
  std::vector<std::uint64_t> d(n_);
  std::uint64_t v = a;
  for (std::uint32_t i = 0; i < n_; ++i, v /= p_) d[i] = v % p_;
  return d;
}

std::uint64_t FiniteField::mult_order(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "order of 0");
  std::uint64_t k = 1;
  for (std::uint32_t x = a; x != 1; x = mul(x, a)) ++k;
  return k;
}

bool FiniteField::independent(const std::vector<std::uint32_t>& elems) const {
  std::vector<std::vector<std::uint64_t>> rows;
  for (auto e : elems) rows.push_back(digits(e));
  std::size_t rank = 0;
  for (std::uint32_t col = 0; col < n_ && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    std::uint64_t inv = mod_inv(rows[rank][col], p_);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      std::uint64_t factor = mod_mul(rows[r][col], inv, p_);
      for (std::uint32_t c = 0; c < n_; ++c) {
        rows[r][c] = (rows[r][c] + p_ - mod_mul(factor, rows[rank][c], p_)) % p_;
      }
    }
    ++rank;
  }
  return rank == rows.size();
}

std::string FiniteField::element_to_string(std::uint32_t a) const {
  auto d = digits(a);
  return FpPoly(p_, std::vector<std::uint64_t>(d.begin(), d.end())).to_string('a');
}

namespace {

bool closed_under_products(const FiniteField& k, const std::vector<std::uint32_t>& set) {
  for (auto a : set) {
    for (auto b : set) {
      auto c = k.mul(a, b);
      if (c != 0 && std::find(set.begin(), set.end(), c) == set.end()) return false;
    }
  }
  return true;
}

struct Searcher {
  const FiniteField& k;
  std::uint32_t n;
  std::vector<std::uint32_t> candidates;
  std::vector<bool> allowed;
  std::vector<bool> chosen;
  std::vector<std::uint32_t> current;
  MultBasisSearch& result;

  void run(std::size_t start) {
    if (current.size() == n) {
      ++result.examined;
      if (closed_under_products(k, current) && k.independent(current)) result.bases.push_back(current);
      return;
    }
    for (std::size_t c = start; c < candidates.size(); ++c) {
      std::uint32_t x = candidates[c];
      current.push_back(x);
      chosen[x] = true;
      if (viable(x) && k.independent(current)) run(c + 1);
      chosen[x] = false;
      current.pop_back();
    }
  }

  /// Products that can no longer join the set (disallowed, or below the
  /// newest element and absent) kill the branch.
  bool viable(std::uint32_t newest) const {
    for (auto a : current) {
      auto c = k.mul(a, newest);
      if (c == 0 || chosen[c]) continue;
      if (!allowed[c] || c < newest) return false;
    }
    return true;
  }
};

}  // namespace

MultBasisSearch finite_field_mult_basis_search(std::uint64_t p, std::uint32_t n, std::uint64_t bound,
                                               SearchMode mode) {
  if (!is_prime(p)) throw Error(ErrorKind::UnsupportedField, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorKind::Usage, "extension degree must be at least 1");
  mpz_class q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= static_cast<unsigned long>(p);
    if (q > bound) {
      throw Error(ErrorKind::TooLarge, "field of order " + std::to_string(p) + "^" + std::to_string(n) +
                                           " exceeds the bound " + std::to_string(bound));
    }
  }
  FiniteField k(p, n);
  MultBasisSearch r;
  r.p = p;
  r.n = n;
  r.modulus = k.modulus().to_string('a');

  // |GL_n(p)| / n! unordered bases
  mpz_class gl = 1, pi = 1, fact = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    gl *= q - pi;
    pi *= static_cast<unsigned long>(p);
    fact *= i + 1;
  }
  mpz_class count = gl / fact;
  r.candidate_bases = count.get_ui();

  const auto order = static_cast<std::uint32_t>(k.order());
  if (mode == SearchMode::Naive) {
    std::vector<std::uint32_t> pick(n);
    for (std::uint32_t i = 0; i < n; ++i) pick[i] = i + 1;
    while (true) {
      ++r.examined;
      if (k.independent(pick) && closed_under_products(k, pick)) r.bases.push_back(pick);
      std::int64_t i = static_cast<std::int64_t>(n) - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == order - n + static_cast<std::uint32_t>(i)) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (auto j = static_cast<std::size_t>(i) + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
  } else {
    Searcher s{k, n, {}, std::vector<bool>(order, false), std::vector<bool>(order, false), {}, r};
    for (std::uint32_t a = 1; a < order; ++a) {
      if (k.mult_order(a) <= n) {
        s.candidates.push_back(a);
        s.allowed[a] = true;
      }
    }
    s.run(0);
  }
  for (const auto& b : r.bases) {
    std::vector<std::string> text;
    for (auto e : b) text.push_back(k.element_to_string(e));
    r.bases_text.push_back(std::move(text));
  }
  return r;
}

}  // namespace loewy
