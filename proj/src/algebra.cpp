#include "loewy/algebra.hpp"

#include <algorithm>

#include "loewy/error.hpp"

namespace loewy {

struct ElementAccess {
  /// Trusted constructor: deviations already sorted, nonzero and valid.
  static Element raw(Ordinal level, std::vector<Deviation> devs, FieldValue constant) {
    return Element(std::move(level), std::move(devs), std::move(constant));
  }
};

namespace {

Element raw(Ordinal level, std::vector<Deviation> devs, FieldValue constant) {
  return ElementAccess::raw(std::move(level), std::move(devs), std::move(constant));
}

void require_compatible(const Element& x, const Element& y, const char* op) {
  if (!(x.level() == y.level())) {
    throw Error(ErrorKind::LevelMismatch, std::string(op) + ": levels " + x.level().to_string() +
                                              " and " + y.level().to_string());
  }
  if (!(x.field() == y.field())) {
    throw Error(ErrorKind::FieldMismatch,
                std::string(op) + ": fields " + x.field().to_string() + " and " + y.field().to_string());
  }
}

const Ordinal kOne = Ordinal::finite(1);

}  // namespace

AlgebraDescriptor::AlgebraDescriptor(FieldDescriptor f, Ordinal lvl, std::uint32_t w)
    : field(f), level(std::move(lvl)), width(w) {
  if (width == 0) throw Error(ErrorKind::Usage, "algebra width must be at least 1");
}

std::string AlgebraDescriptor::to_string() const {
  return "B(" + level.to_string() + "," + std::to_string(width) + ")/" + field.to_string();
}

bool is_valid_coord(const Ordinal& level, const Ordinal& coord) {
  if (level.is_zero()) return false;
  if (level.is_successor()) return coord.is_finite();
  return coord < level;
}

Ordinal component_level(const Ordinal& level, const Ordinal& coord) {
  if (!is_valid_coord(level, coord)) {
    throw Error(ErrorKind::LevelMismatch,
                "coordinate " + coord.to_string() + " is not valid at level " + level.to_string());
  }
  return level.is_successor() ? level.predecessor() : coord;
}

// ---------------------------------------------------------------------------
// Element

Element::Element(Ordinal level, std::vector<Deviation> devs, FieldValue constant)
    : level_(std::move(level)), constant_(std::move(constant)) {
  if (!devs.empty()) devs_ = std::make_shared<const std::vector<Deviation>>(std::move(devs));
}

Element::Element(Ordinal level, std::shared_ptr<const std::vector<Deviation>> devs, FieldValue constant)
    : level_(std::move(level)), devs_(std::move(devs)), constant_(std::move(constant)) {}

const std::vector<Deviation>& Element::deviations() const noexcept {
  static const std::vector<Deviation> empty;
  return devs_ ? *devs_ : empty;
}

Element Element::zero(const FieldDescriptor& f, const Ordinal& level) {
  return raw(level, {}, FieldValue::zero(f));
}

Element Element::one(const FieldDescriptor& f, const Ordinal& level) {
  return raw(level, {}, FieldValue::one(f));
}

Element Element::constant(const Ordinal& level, const FieldValue& k) { return raw(level, {}, k); }

Element Element::make(const Ordinal& level, std::vector<Deviation> deviations, const FieldValue& constant) {
  const FieldDescriptor& f = constant.field();
  std::vector<Deviation> kept;
  kept.reserve(deviations.size());
  for (auto& d : deviations) {
    Ordinal expected = component_level(level, d.coord);
    if (!(d.value.level() == expected)) {
      throw Error(ErrorKind::LevelMismatch, "deviation at coordinate " + d.coord.to_string() + " has level " +
                                                d.value.level().to_string() + ", expected " +
                                                expected.to_string());
    }
    if (!(d.value.field() == f)) {
      throw Error(ErrorKind::FieldMismatch, "deviation at coordinate " + d.coord.to_string());
    }
    if (!d.value.is_zero()) kept.push_back(std::move(d));
  }
  std::sort(kept.begin(), kept.end(), [](const Deviation& a, const Deviation& b) { return a.coord < b.coord; });
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i - 1].coord == kept[i].coord) {
      throw Error(ErrorKind::LevelMismatch, "duplicate coordinate " + kept[i].coord.to_string());
    }
  }
  return raw(level, std::move(kept), constant);
}

bool Element::is_zero() const noexcept { return !devs_ && constant_.is_zero(); }

const Element* Element::deviation_at(const Ordinal& coord) const {
  const auto& devs = deviations();
  auto it = std::lower_bound(devs.begin(), devs.end(), coord,
                             [](const Deviation& d, const Ordinal& c) { return d.coord < c; });
  if (it != devs.end() && it->coord == coord) return &it->value;
  return nullptr;
}

Element Element::value_at(const Ordinal& coord) const {
  Ordinal comp = component_level(level_, coord);
  if (const Element* d = deviation_at(coord)) return d->plus_constant(constant_);
  return constant(comp, constant_);
}

Element Element::plus_constant(const FieldValue& k) const {
  if (k.is_zero()) return *this;
  return Element(level_, devs_, constant_ + k);
}

std::string Element::to_string() const {
  if (level_.is_zero()) return constant_.to_string();
  std::string out = "{";
  const auto& devs = deviations();
  for (std::size_t i = 0; i < devs.size(); ++i) {
    if (i != 0) out += ", ";
    out += devs[i].coord.to_string() + ": " + devs[i].value.to_string();
  }
  out += "; " + constant_.to_string() + "}";
  return out;
}

bool operator==(const Element& a, const Element& b) {
  if (!(a.level_ == b.level_) || !(a.constant_ == b.constant_)) return false;
  return a.devs_ == b.devs_ || a.deviations() == b.deviations();
}

Element inject(const Ordinal& level, const Ordinal& coord, const Element& x) {
  Ordinal comp = component_level(level, coord);
  if (!(x.level() == comp)) {
    throw Error(ErrorKind::LevelMismatch, "inject at coordinate " + coord.to_string() + " of level " +
                                              level.to_string() + " needs level " + comp.to_string() +
                                              ", got " + x.level().to_string());
  }
  std::vector<Deviation> devs;
  if (!x.is_zero()) devs.push_back(Deviation{coord, x});
  return raw(level, std::move(devs), FieldValue::zero(x.field()));
}

Element operator+(const Element& x, const Element& y) {
  require_compatible(x, y, "add");
  const auto& a = x.deviations();
  const auto& b = y.deviations();
  std::vector<Deviation> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].coord < b[j].coord)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].coord < a[i].coord) {
      out.push_back(b[j++]);
    } else {
      Element v = a[i].value + b[j].value;
      if (!v.is_zero()) out.push_back(Deviation{a[i].coord, std::move(v)});
      ++i;
      ++j;
    }
  }
  return raw(x.level(), std::move(out), x.constant() + y.constant());
}

Element operator-(const Element& x) {
  std::vector<Deviation> out;
  out.reserve(x.deviations().size());
  for (const auto& d : x.deviations()) out.push_back(Deviation{d.coord, -d.value});
  return raw(x.level(), std::move(out), -x.constant());
}

Element operator-(const Element& x, const Element& y) { return x + (-y); }

Element operator*(const FieldValue& k, const Element& x) {
  if (!(k.field() == x.field())) throw Error(ErrorKind::FieldMismatch, "scalar multiplication");
  if (k.is_zero()) return Element::zero(x.field(), x.level());
  std::vector<Deviation> out;
  out.reserve(x.deviations().size());
  for (const auto& d : x.deviations()) out.push_back(Deviation{d.coord, k * d.value});
  return raw(x.level(), std::move(out), k * x.constant());
}

Element operator*(const Element& x, const Element& y) {
  require_compatible(x, y, "mul");
  const FieldValue& c = x.constant();
  const FieldValue& c2 = y.constant();
  FieldValue cc = c * c2;
  const auto& a = x.deviations();
  const auto& b = y.deviations();
  std::vector<Deviation> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].coord < b[j].coord)) {
      // y's value here is c2 * 1, so the product deviates by c2 * d.
      if (!c2.is_zero()) out.push_back(Deviation{a[i].coord, c2 * a[i].value});
      ++i;
    } else if (i == a.size() || b[j].coord < a[i].coord) {
      if (!c.is_zero()) out.push_back(Deviation{b[j].coord, c * b[j].value});
      ++j;
    } else {
      // (d + c)(d' + c') - cc' = dd' + c'd + cd'
      Element v = (a[i].value.plus_constant(c) * b[j].value.plus_constant(c2)).plus_constant(-cc);
      if (!v.is_zero()) out.push_back(Deviation{a[i].coord, std::move(v)});
      ++i;
      ++j;
    }
  }
  return raw(x.level(), std::move(out), std::move(cc));
}

Element quasi_inverse(const Element& x) {
  const FieldValue& c = x.constant();
  FieldValue d = c.is_zero() ? c : c.inverse();
  std::vector<Deviation> out;
  out.reserve(x.deviations().size());
  for (const auto& dev : x.deviations()) {
    Element w = quasi_inverse(dev.value.plus_constant(c)).plus_constant(-d);
    if (!w.is_zero()) out.push_back(Deviation{dev.coord, std::move(w)});
  }
  return raw(x.level(), std::move(out), std::move(d));
}

UnitIdempotentFactors unit_idempotent_factorization(const Element& x) {
  Element s = quasi_inverse(x);
  Element e = x * s;
  Element complement = Element::one(x.field(), x.level()) - e;
  return {x + complement, e, s + complement};
}

std::optional<Ordinal> loewy_depth(const Element& x) {
  if (x.is_zero()) return std::nullopt;
  if (!x.constant().is_zero()) return x.level();
  std::optional<Ordinal> best;
  for (const auto& d : x.deviations()) {
    auto depth = loewy_depth(d.value);
    if (!best || *best < *depth) best = std::move(depth);
  }
  return best;
}

PeeledComponent peel_component(const Element& x, const Ordinal& coord) {
  if (x.level().is_zero()) throw Error(ErrorKind::LevelMismatch, "peel_component needs level > 0");
  Element component = x.value_at(coord);
  std::vector<Deviation> rest;
  rest.reserve(x.deviations().size());
  const bool shift = x.level().is_successor();
  for (const auto& d : x.deviations()) {
    if (d.coord == coord) continue;
    if (shift && coord < d.coord) {
      rest.push_back(Deviation{Ordinal::finite(*d.coord.to_finite() - 1), d.value});
    } else {
      rest.push_back(d);
    }
  }
  return {std::move(component), raw(x.level(), std::move(rest), x.constant())};
}

// ---------------------------------------------------------------------------
// Swallow isomorphisms

Element swallow_succ_forward(const Element& x, const Element& y) {
  if (!(y.level() == x.level() + kOne)) {
    throw Error(ErrorKind::LevelMismatch, "swallow_succ: x at level " + x.level().to_string() +
                                              " needs y at level " + (x.level() + kOne).to_string() +
                                              ", got " + y.level().to_string());
  }
  if (!(x.field() == y.field())) throw Error(ErrorKind::FieldMismatch, "swallow_succ");
  const FieldValue& c = y.constant();
  std::vector<Deviation> out;
  out.reserve(y.deviations().size() + 1);
  Element head = x.plus_constant(-c);
  if (!head.is_zero()) out.push_back(Deviation{Ordinal{}, std::move(head)});
  for (const auto& d : y.deviations()) {
    out.push_back(Deviation{Ordinal::finite(*d.coord.to_finite() + 1), d.value});
  }
  return raw(y.level(), std::move(out), c);
}

std::pair<Element, Element> swallow_succ_backward(const Ordinal& beta, const Element& z) {
  if (!(z.level() == beta + kOne)) {
    throw Error(ErrorKind::LevelMismatch, "swallow_succ backward: expected level " +
                                              (beta + kOne).to_string() + ", got " + z.level().to_string());
  }
  Element x = z.value_at(Ordinal{});
  std::vector<Deviation> out;
  out.reserve(z.deviations().size());
  for (const auto& d : z.deviations()) {
    if (d.coord.is_zero()) continue;
    out.push_back(Deviation{Ordinal::finite(*d.coord.to_finite() - 1), d.value});
  }
  return {std::move(x), raw(z.level(), std::move(out), z.constant())};
}

namespace {

void require_limit_pair(const Ordinal& beta, const Ordinal& alpha) {
  if (!alpha.is_limit() || !(beta < alpha)) {
    throw Error(ErrorKind::BadOrdinals, "swallow_limit needs beta < alpha with alpha a limit, got beta=" +
                                            beta.to_string() + ", alpha=" + alpha.to_string());
  }
}

/// z with the deviation at `coord` replaced by `dev` (removed when zero).
Element replace_deviation(const Element& z, const Ordinal& coord, Element dev) {
  std::vector<Deviation> out;
  out.reserve(z.deviations().size() + 1);
  bool placed = dev.is_zero();
  for (const auto& d : z.deviations()) {
    if (!placed && coord < d.coord) {
      out.push_back(Deviation{coord, std::move(dev)});
      placed = true;
    }
    if (d.coord == coord) continue;
    out.push_back(d);
  }
  if (!placed) out.push_back(Deviation{coord, std::move(dev)});
  return raw(z.level(), std::move(out), z.constant());
}

}  // namespace

Element swallow_limit_forward(const Element& x, const Element& y) {
  const Ordinal& beta = x.level();
  require_limit_pair(beta, y.level());
  if (!(x.field() == y.field())) throw Error(ErrorKind::FieldMismatch, "swallow_limit");
  Ordinal slot = beta + kOne;
  Element absorbed = swallow_succ_forward(x, y.value_at(slot));
  return replace_deviation(y, slot, absorbed.plus_constant(-y.constant()));
}

std::pair<Element, Element> swallow_limit_backward(const Ordinal& beta, const Element& z) {
  require_limit_pair(beta, z.level());
  Ordinal slot = beta + kOne;
  auto [x, v] = swallow_succ_backward(beta, z.value_at(slot));
  Element y = replace_deviation(z, slot, v.plus_constant(-z.constant()));
  return {std::move(x), std::move(y)};
}

Element swallow_forward(const Element& x, const Element& y) {
  const Ordinal& beta = x.level();
  const Ordinal& alpha = y.level();
  if (!(beta < alpha)) {
    throw Error(ErrorKind::BadOrdinals,
                "swallow needs beta < alpha, got beta=" + beta.to_string() + ", alpha=" + alpha.to_string());
  }
  if (alpha.is_limit()) return swallow_limit_forward(x, y);
  Ordinal prev = alpha.predecessor();
  if (prev == beta) return swallow_succ_forward(x, y);
  // B(a) = B(a-1) x B(a); absorb x into the B(a-1) factor, then reassemble.
  auto [head, tail] = swallow_succ_backward(prev, y);
  return swallow_succ_forward(swallow_forward(x, head), tail);
}

std::pair<Element, Element> swallow_backward(const Ordinal& beta, const Element& z) {
  const Ordinal& alpha = z.level();
  if (!(beta < alpha)) {
    throw Error(ErrorKind::BadOrdinals,
                "swallow needs beta < alpha, got beta=" + beta.to_string() + ", alpha=" + alpha.to_string());
  }
  if (alpha.is_limit()) return swallow_limit_backward(beta, z);
  Ordinal prev = alpha.predecessor();
  if (prev == beta) return swallow_succ_backward(beta, z);
  auto [head, tail] = swallow_succ_backward(prev, z);
  auto [x, inner] = swallow_backward(beta, head);
  return {std::move(x), swallow_succ_forward(inner, tail)};
}

IdealIdempotent ideal_idempotent(const FieldDescriptor& f, const Ordinal& level,
                                 std::span<const Element> generators) {
  const Element one = Element::one(f, level);
  Element e = Element::zero(f, level);
  std::vector<Element> coefficients;
  coefficients.reserve(generators.size());
  for (const auto& x : generators) {
    require_compatible(e, x, "ideal_idempotent");
    // e v (x s) = e + (1 - e) x s
    Element r = (one - e) * quasi_inverse(x);
    e = e + r * x;
    coefficients.push_back(std::move(r));
  }
  return {std::move(e), std::move(coefficients)};
}

// ---------------------------------------------------------------------------
// TupleElement

TupleElement::TupleElement(std::vector<Element> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::Usage, "tuple of width 0");
  for (const auto& c : components_) require_compatible(components_.front(), c, "tuple");
}

TupleElement TupleElement::zero(const AlgebraDescriptor& d) {
  return TupleElement(std::vector<Element>(d.width, Element::zero(d.field, d.level)));
}

TupleElement TupleElement::one(const AlgebraDescriptor& d) {
  return TupleElement(std::vector<Element>(d.width, Element::one(d.field, d.level)));
}

TupleElement TupleElement::embed_scalar(const AlgebraDescriptor& d, const FieldValue& k) {
  return TupleElement(std::vector<Element>(d.width, Element::constant(d.level, k)));
}

bool TupleElement::is_zero() const noexcept {
  return std::all_of(components_.begin(), components_.end(), [](const Element& e) { return e.is_zero(); });
}

std::string TupleElement::to_string() const {
  if (components_.size() == 1) return components_.front().to_string();
  std::string out = "<";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i != 0) out += ", ";
    out += components_[i].to_string();
  }
  return out + ">";
}

namespace {

template <typename Op>
TupleElement zip(const TupleElement& x, const TupleElement& y, Op op) {
  if (x.width() != y.width()) {
    throw Error(ErrorKind::LevelMismatch,
                "tuple widths " + std::to_string(x.width()) + " and " + std::to_string(y.width()));
  }
  std::vector<Element> out;
  out.reserve(x.width());
  for (std::size_t i = 0; i < x.width(); ++i) out.push_back(op(x[i], y[i]));
  return TupleElement(std::move(out));
}

template <typename Op>
TupleElement map(const TupleElement& x, Op op) {
  std::vector<Element> out;
  out.reserve(x.width());
  for (const auto& c : x.components()) out.push_back(op(c));
  return TupleElement(std::move(out));
}

}  // namespace

TupleElement operator+(const TupleElement& x, const TupleElement& y) {
  return zip(x, y, [](const Element& a, const Element& b) { return a + b; });
}
TupleElement operator-(const TupleElement& x) {
  return map(x, [](const Element& a) { return -a; });
}
TupleElement operator-(const TupleElement& x, const TupleElement& y) {
  return zip(x, y, [](const Element& a, const Element& b) { return a - b; });
}
TupleElement operator*(const TupleElement& x, const TupleElement& y) {
  return zip(x, y, [](const Element& a, const Element& b) { return a * b; });
}
TupleElement operator*(const FieldValue& k, const TupleElement& x) {
  return map(x, [&k](const Element& a) { return k * a; });
}

TupleElement quasi_inverse(const TupleElement& x) {
  return map(x, [](const Element& a) { return quasi_inverse(a); });
}

std::optional<Ordinal> loewy_depth(const TupleElement& x) {
  std::optional<Ordinal> best;
  for (const auto& c : x.components()) {
    auto d = loewy_depth(c);
    if (d && (!best || *best < *d)) best = std::move(d);
  }
  return best;
}

TupleUnitIdempotentFactors unit_idempotent_factorization(const TupleElement& x) {
  TupleElement s = quasi_inverse(x);
  TupleElement e = x * s;
  TupleElement complement = TupleElement::one(x.descriptor()) - e;
  return {x + complement, e, s + complement};
}

std::vector<Element> split_components(const TupleElement& x) { return x.components(); }

TupleElement merge_components(std::vector<Element> components) { return TupleElement(std::move(components)); }

// ---------------------------------------------------------------------------
// Dimension sequences

LayerInfo DimensionSequence::layer(const Ordinal& gamma) const {
  if (level < gamma) {
    throw Error(ErrorKind::BadOrdinals, "layer " + gamma.to_string() + " above level " + level.to_string());
  }
  if (gamma < level) return LayerInfo{gamma, true, 0, 1, field};
  return LayerInfo{gamma, false, top_dim, 1, field};
}

std::string DimensionSequence::to_string() const {
  std::string k = field.to_string();
  std::string out;
  if (!level.is_zero()) {
    out += "layers gamma < " + level.to_string() + ": (aleph0 components, rank 1, field " + k + "); ";
  }
  out += "layer " + level.to_string() + ": (" + std::to_string(top_dim) + " components, rank 1, field " + k + ")";
  return out;
}

DimensionSequence dimension_sequence(const AlgebraDescriptor& d) { return {d.level, d.field, d.width}; }

bool factor_equivalent(const DimensionSequence& a, const DimensionSequence& b) {
  return a.level == b.level && a.field == b.field && a.top_dim == b.top_dim;
}

// ---------------------------------------------------------------------------
// Random elements

const std::vector<Ordinal>& ElementSampler::coordinates(const Ordinal& level) {
  for (const auto& [lvl, coords] : coord_cache_) {
    if (lvl == level) return coords;
  }
  std::vector<Ordinal> coords;
  if (level.is_successor()) {
    for (std::uint64_t t = 0; t <= spec_.max_coord; ++t) coords.push_back(Ordinal::finite(t));
  } else if (level.is_limit()) {
    coords = small_ordinals_below(level, spec_.max_coord, spec_.max_limit_coord);
  }
  coord_cache_.emplace_back(level, std::move(coords));
  return coord_cache_.back().second;
}

Element ElementSampler::sample_at(const Ordinal& level, int budget, Rng& rng) {
  if (level.is_zero()) return Element::scalar(random_scalar(field_, rng));
  FieldValue c = rng.chance(1, 3) ? FieldValue::zero(field_) : random_scalar(field_, rng, true);
  std::vector<Deviation> devs;
  // Copy: recursive calls may grow the cache and invalidate references.
  std::vector<Ordinal> coords = coordinates(level);
  for (const auto& t : coords) {
    if (!rng.chance(spec_.density_num, spec_.density_den)) continue;
    Ordinal comp = component_level(level, t);
    Element v = budget > 0 ? sample_at(comp, budget - 1, rng)
                           : Element::constant(comp, random_scalar(field_, rng, true));
    if (!v.is_zero()) devs.push_back(Deviation{t, std::move(v)});
  }
  return raw(level, std::move(devs), std::move(c));
}

Element ElementSampler::sample(const Ordinal& level, Rng& rng) { return sample_at(level, spec_.depth_budget, rng); }

Element ElementSampler::sample_nonzero(const Ordinal& level, Rng& rng) {
  while (true) {
    Element e = sample(level, rng);
    if (!e.is_zero()) return e;
  }
}

TupleElement ElementSampler::sample(const AlgebraDescriptor& d, Rng& rng) {
  std::vector<Element> comps;
  comps.reserve(d.width);
  for (std::uint32_t i = 0; i < d.width; ++i) comps.push_back(sample(d.level, rng));
  return TupleElement(std::move(comps));
}

Element random_element(const FieldDescriptor& f, const Ordinal& level, const RandomSpec& spec,
                       std::uint64_t seed) {
  Rng rng(seed);
  ElementSampler sampler(f, spec);
  return sampler.sample(level, rng);
}

}  // namespace loewy
