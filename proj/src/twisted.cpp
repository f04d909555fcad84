#include "loewy/twisted.hpp"

#include <algorithm>
#include <cctype>

#include "loewy/error.hpp"

namespace loewy {

namespace {

void require_char_p(const FieldDescriptor& f) {
  if (f.characteristic() == 0) {
    throw Error(ErrorKind::UnsupportedField, "the twisted algebra needs positive characteristic, got " + f.to_string());
  }
}

void require_same(const TwistedElement& a, const TwistedElement& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorKind::FieldMismatch, "twisted: " + a.field().to_string() + " and " + b.field().to_string());
  }
}

void require_level1(const Element& x) {
  if (!(x.level() == Ordinal::finite(1))) {
    throw Error(ErrorKind::LevelMismatch, "expected a level-1 element, got level " + x.level().to_string());
  }
}

}  // namespace

TwistedElement TwistedElement::zero(const FieldDescriptor& f) {
  require_char_p(f);
  return {{}, FieldValue::zero(f)};
}

TwistedElement TwistedElement::one(const FieldDescriptor& f) {
  require_char_p(f);
  return {{}, FieldValue::one(f)};
}

TwistedElement TwistedElement::nu(const FieldValue& k) {
  require_char_p(k.field());
  return {{}, k};
}

TwistedElement TwistedElement::make(std::vector<Entry> deviations, const FieldValue& nu_param) {
  require_char_p(nu_param.field());
  std::vector<Entry> kept;
  for (auto& [t, d] : deviations) {
    if (!(d.field() == nu_param.field())) throw Error(ErrorKind::FieldMismatch, "twisted deviation field");
    if (!d.is_zero()) kept.emplace_back(t, std::move(d));
  }
  std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i - 1].first == kept[i].first) {
      throw Error(ErrorKind::LevelMismatch, "duplicate coordinate " + std::to_string(kept[i].first));
    }
  }
  return {std::move(kept), nu_param};
}

FieldValue TwistedElement::value_at(std::uint64_t t) const {
  FieldValue base = frobenius(nu_);
  auto it = std::lower_bound(devs_.begin(), devs_.end(), t, [](const Entry& e, std::uint64_t c) { return e.first < c; });
  if (it != devs_.end() && it->first == t) return it->second + base;
  return base;
}

Element TwistedElement::to_generic() const {
  std::vector<Deviation> devs;
  devs.reserve(devs_.size());
  for (const auto& [t, d] : devs_) devs.push_back({Ordinal::finite(t), Element::scalar(d)});
  return Element::make(Ordinal::finite(1), std::move(devs), frobenius(nu_));
}

std::string TwistedElement::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < devs_.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(devs_[i].first) + ": " + devs_[i].second.to_string();
  }
  return out + "; nu(" + nu_.to_string() + ")}";
}

TwistedElement TwistedElement::parse(const FieldDescriptor& f, std::string_view text) {
  require_char_p(f);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) throw ParseError(pos, std::string("expected '") + c + "'");
    ++pos;
  };
  // Scalar text up to a top-level stop character.
  auto scalar_until = [&](std::string_view stops) {
    skip();
    std::size_t start = pos;
    int depth = 0;
    while (pos < text.size()) {
      char c = text[pos];
      if (depth == 0 && stops.find(c) != std::string_view::npos) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      ++pos;
    }
    std::string_view s = text.substr(start, pos - start);
    try {
      return FieldValue::parse(f, s);
    } catch (const ParseError& e) {
      throw ParseError(start + e.position(), "bad scalar in twisted literal");
    }
  };

  expect('{');
  std::vector<Entry> devs;
  skip();
  if (pos < text.size() && text[pos] != ';') {
    while (true) {
      skip();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw ParseError(pos, "expected a natural coordinate");
      std::uint64_t t = std::stoull(std::string(text.substr(start, pos - start)));
      expect(':');
      devs.emplace_back(t, scalar_until(",;"));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  expect(';');
  skip();
  if (text.substr(pos, 2) != "nu") throw ParseError(pos, "expected 'nu('");
  pos += 2;
  expect('(');
  // nu's argument ends at the matching ')'.
  FieldValue k = scalar_until(")");
  expect(')');
  expect('}');
  skip();
  if (pos != text.size()) throw ParseError(pos, "trailing characters after twisted literal");
  return make(std::move(devs), k);
}

TwistedElement operator+(const TwistedElement& a, const TwistedElement& b) {
  require_same(a, b);
  std::vector<TwistedElement::Entry> out(a.deviations());
  out.insert(out.end(), b.deviations().begin(), b.deviations().end());
  // make() would reject the duplicate keys, so merge here.
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<TwistedElement::Entry> merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second = merged.back().second + e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  return TwistedElement::make(std::move(merged), a.nu_param() + b.nu_param());
}

TwistedElement operator-(const TwistedElement& a) {
  std::vector<TwistedElement::Entry> out;
  for (const auto& [t, d] : a.deviations()) out.emplace_back(t, -d);
  return TwistedElement::make(std::move(out), -a.nu_param());
}

TwistedElement operator-(const TwistedElement& a, const TwistedElement& b) { return a + (-b); }

TwistedElement operator*(const TwistedElement& a, const TwistedElement& b) {
  require_same(a, b);
  const FieldValue kp = frobenius(a.nu_param());
  const FieldValue kp2 = frobenius(b.nu_param());
  std::vector<TwistedElement::Entry> out;
  const auto& x = a.deviations();
  const auto& y = b.deviations();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, x[i].second * kp2);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, y[j].second * kp);
      ++j;
    } else {
      const auto& d = x[i].second;
      const auto& d2 = y[j].second;
      out.emplace_back(x[i].first, d * d2 + d * kp2 + d2 * kp);
      ++i;
      ++j;
    }
  }
  return TwistedElement::make(std::move(out), a.nu_param() * b.nu_param());
}

TwistedElement t_quasi_inverse(const TwistedElement& a) {
  const FieldValue& k = a.nu_param();
  FieldValue kinv = k.is_zero() ? k : k.inverse();
  const FieldValue kp = frobenius(k);
  const FieldValue kinvp = frobenius(kinv);
  std::vector<TwistedElement::Entry> out;
  for (const auto& [t, d] : a.deviations()) {
    FieldValue v = d + kp;
    FieldValue vinv = v.is_zero() ? v : v.inverse();
    out.emplace_back(t, vinv - kinvp);
  }
  return TwistedElement::make(std::move(out), kinv);
}

bool t_membership(const Element& generic) {
  require_level1(generic);
  require_char_p(generic.field());
  return pth_root(generic.constant()).has_value();
}

std::optional<TwistedElement> from_generic(const Element& generic) {
  require_level1(generic);
  require_char_p(generic.field());
  auto k = pth_root(generic.constant());
  if (!k) return std::nullopt;
  std::vector<TwistedElement::Entry> devs;
  for (const auto& d : generic.deviations()) devs.emplace_back(*d.coord.to_finite(), d.value.constant());
  return TwistedElement::make(std::move(devs), *k);
}

TwistedElement psi_embed(const Element& x) {
  require_level1(x);
  require_char_p(x.field());
  std::vector<TwistedElement::Entry> devs;
  for (const auto& d : x.deviations()) devs.emplace_back(*d.coord.to_finite(), frobenius(d.value.constant()));
  return TwistedElement::make(std::move(devs), x.constant());
}

std::optional<Element> psi_preimage(const TwistedElement& t) {
  std::vector<Deviation> devs;
  for (const auto& [c, d] : t.deviations()) {
    auto r = pth_root(d);
    if (!r) return std::nullopt;
    devs.push_back({Ordinal::finite(c), Element::scalar(*r)});
  }
  return Element::make(Ordinal::finite(1), std::move(devs), t.nu_param());
}

DimensionSequence t_dimension_sequence(const FieldDescriptor& f) {
  require_char_p(f);
  return {Ordinal::finite(1), f, 1};
}

TwistedElement random_twisted(const FieldDescriptor& f, Rng& rng, std::uint64_t max_coord) {
  require_char_p(f);
  FieldValue k = rng.chance(1, 3) ? FieldValue::zero(f) : random_scalar(f, rng, true);
  std::vector<TwistedElement::Entry> devs;
  for (std::uint64_t t = 0; t <= max_coord; ++t) {
    if (rng.chance(1, 2)) devs.emplace_back(t, random_scalar(f, rng, true));
  }
  return TwistedElement::make(std::move(devs), k);
}

}  // namespace loewy
