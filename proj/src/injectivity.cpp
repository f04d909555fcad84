#include "loewy/injectivity.hpp"

#include <algorithm>
#include <charconv>

#include "loewy/error.hpp"

namespace loewy {

// ---------------------------------------------------------------------------
// Cardinals

std::strong_ordering operator<=>(const SymbolicCardinal& a, const SymbolicCardinal& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  return a.n <=> b.n;
}

SymbolicCardinal SymbolicCardinal::parse(std::string_view text) {
  auto number = [&](std::string_view digits, std::size_t offset) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ParseError(offset, "expected a natural number in cardinal literal");
    }
    return v;
  };
  if (text == "kappa") return kappa();
  if (text == "kappa+") return kappa_plus();
  if (text.starts_with("fin:")) return fin(number(text.substr(4), 4));
  if (text.starts_with("aleph:")) return aleph(number(text.substr(6), 6));
  throw ParseError(0, "unknown cardinal '" + std::string(text) + "' (use fin:N, aleph:N, kappa, kappa+)");
}

std::string SymbolicCardinal::to_string() const {
  switch (kind) {
    case CardKind::Fin: return "fin:" + std::to_string(n);
    case CardKind::Aleph: return "aleph:" + std::to_string(n);
    case CardKind::Kappa: return "kappa";
    case CardKind::KappaPlus: return "kappa+";
  }
  return {};
}

SymbolicCardinal gamma() { return SymbolicCardinal::kappa_plus(); }

// ---------------------------------------------------------------------------
// Supports and module elements

SupportDescriptor SupportDescriptor::explicit_finite(std::vector<std::uint64_t> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return SupportDescriptor(std::move(coords));
}

SupportDescriptor SupportDescriptor::symbolic(SymbolicCardinal c, std::string tag) {
  if (!c.is_infinite() || SymbolicCardinal::kappa() < c) {
    throw Error(ErrorKind::BadCardinal, "a symbolic subset of kappa has cardinality between aleph:0 and kappa, got " +
                                            c.to_string());
  }
  return SupportDescriptor(SymbolicSet{c, std::move(tag)});
}

SymbolicCardinal SupportDescriptor::cardinality() const {
  if (is_explicit()) return SymbolicCardinal::fin(coords().size());
  return set().cardinality;
}

std::string SupportDescriptor::to_string() const {
  if (!is_explicit()) return set().tag + " (" + set().cardinality.to_string() + ")";
  std::string out = "{";
  for (std::size_t i = 0; i < coords().size(); ++i) out += (i ? "," : "") + std::to_string(coords()[i]);
  return out + "}";
}

MElement MElement::explicit_values(std::map<std::uint64_t, FieldValue> v) {
  MElement m;
  for (auto& [a, k] : v) {
    if (!k.is_zero()) m.values.emplace(a, std::move(k));
  }
  return m;
}

SymbolicCardinal MElement::support_cardinality() const {
  if (indicator) return indicator->cardinality;
  return SymbolicCardinal::fin(values.size());
}

std::string MElement::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, k] : values) {
    out += (first ? "" : ", ") + std::to_string(a) + ": " + k.to_string();
    first = false;
  }
  if (indicator) out += std::string(first ? "" : "; ") + "1 on " + indicator->tag + " (" + indicator->cardinality.to_string() + ")";
  return out + "}";
}

bool m_membership(const MElement& m, const SymbolicCardinal& lambda) { return m.support_cardinality() < lambda; }

// ---------------------------------------------------------------------------
// Printing

std::string verdict_name(const Verdict& v) {
  if (std::holds_alternative<Extends>(v)) return "Extends";
  if (std::holds_alternative<Fails>(v)) return "Fails";
  return "InvalidHom";
}

std::string verdict_to_string(const Verdict& v) {
  if (const auto* e = std::get_if<Extends>(&v)) return "Extends(witness " + e->witness.to_string() + ")";
  if (const auto* f = std::get_if<Fails>(&v)) {
    return "Fails(required " + f->required.to_string() + " >= lambda " + f->allowed.to_string() + ": " + f->reason + ")";
  }
  const auto& h = std::get<InvalidHomVerdict>(v);
  return "InvalidHom(" + (h.coordinate ? std::to_string(*h.coordinate) + ": " : std::string()) + h.reason + ")";
}

std::string ideal_to_string(const IdealDescriptor& ideal) {
  if (const auto* fg = std::get_if<FinitelyGenerated>(&ideal)) {
    std::string out = "fg(";
    for (std::size_t i = 0; i < fg->generators.size(); ++i) out += (i ? "; " : "") + fg->generators[i].to_string();
    return out + ")";
  }
  return "socle-sum(" + std::get<SocleDirectSum>(ideal).index_set.to_string() + ")";
}

std::string hom_to_string(const HomDescriptor& hom) {
  if (std::holds_alternative<Inclusion>(hom)) return "inclusion";
  std::string out = "table(";
  bool first = true;
  for (const auto& [a, m] : std::get<FiniteTable>(hom).entries) {
    out += (first ? "" : ", ") + std::to_string(a) + " -> " + m.to_string();
    first = false;
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Baer criterion

namespace {

/// m_alpha must satisfy m_alpha * e_alpha = m_alpha, i.e. live on {alpha}.
std::optional<InvalidHomVerdict> check_table_entry(std::uint64_t alpha, const MElement& m) {
  if (m.indicator) return InvalidHomVerdict{alpha, "image of e_alpha has infinite support"};
  for (const auto& [b, k] : m.values) {
    if (b != alpha) {
      return InvalidHomVerdict{alpha, "image of e_alpha is nonzero at coordinate " + std::to_string(b) +
                                          ", so m_alpha * e_alpha != m_alpha"};
    }
  }
  return std::nullopt;
}

FieldValue entry_value(const MElement& m, std::uint64_t alpha, const FieldDescriptor& f) {
  auto it = m.values.find(alpha);
  return it == m.values.end() ? FieldValue::zero(f) : it->second;
}

/// Re-checks a witness against the table and M_lambda.
Verdict verified(const SymbolicCardinal& lambda, MElement witness, const FiniteTable* table, const FieldDescriptor& f,
                 std::string note) {
  if (!m_membership(witness, lambda)) {
    throw Error(ErrorKind::InvalidHom, "internal: witness " + witness.to_string() + " not in M_" + lambda.to_string());
  }
  if (table != nullptr) {
    for (const auto& [alpha, m] : table->entries) {
      auto it = witness.values.find(alpha);
      FieldValue got = it == witness.values.end() ? FieldValue::zero(f) : it->second;
      if (!(got == entry_value(m, alpha, f))) {
        throw Error(ErrorKind::InvalidHom, "internal: witness disagrees with the table at " + std::to_string(alpha));
      }
    }
  }
  return Extends{std::move(witness), std::move(note)};
}

FieldDescriptor table_field(const FiniteTable& t, const FieldDescriptor& fallback) {
  for (const auto& [a, m] : t.entries) {
    if (!m.values.empty()) return m.values.begin()->second.field();
  }
  return fallback;
}

Verdict finitely_generated(const SymbolicCardinal& lambda, const FinitelyGenerated& fg, const HomDescriptor& hom) {
  const Ordinal level = Ordinal::finite(1);
  FieldDescriptor f = FieldDescriptor::rationals();
  for (const auto& g : fg.generators) {
    if (!(g.level() == level)) {
      throw Error(ErrorKind::LevelMismatch, "ideal generators live in B(1,1), got level " + g.level().to_string());
    }
    f = g.field();
  }
  if (const auto* t = std::get_if<FiniteTable>(&hom); t != nullptr && fg.generators.empty()) {
    f = table_field(*t, f);
  }
  // The ideal is eR for the idempotent e joining the generators' supports.
  Element e = ideal_idempotent(f, level, fg.generators).idempotent;

  if (std::holds_alternative<Inclusion>(hom)) {
    if (!e.constant().is_zero()) {
      // e is 1 on all but finitely many coordinates.
      if (!(SymbolicCardinal::kappa() < lambda)) {
        return InvalidHomVerdict{std::nullopt, "the ideal contains 1 on a cofinite set of size kappa, which is not in M_" +
                                                   lambda.to_string()};
      }
      std::string zeros;
      for (const auto& d : e.deviations()) zeros += (zeros.empty() ? "" : ",") + d.coord.to_string();
      MElement m;
      m.indicator = SymbolicSet{SymbolicCardinal::kappa(), zeros.empty() ? "kappa" : "kappa \\ {" + zeros + "}"};
      for (const auto& g : fg.generators) {
        if (!(e * g == g)) throw Error(ErrorKind::InvalidHom, "internal: idempotent does not fix a generator");
      }
      return verified(lambda, std::move(m), nullptr, f, "phi(r) = e r with e the generated idempotent");
    }
    std::map<std::uint64_t, FieldValue> ones;
    for (const auto& d : e.deviations()) ones.emplace(*d.coord.to_finite(), FieldValue::one(f));
    for (const auto& g : fg.generators) {
      if (!(e * g == g)) throw Error(ErrorKind::InvalidHom, "internal: idempotent does not fix a generator");
    }
    return verified(lambda, MElement::explicit_values(std::move(ones)), nullptr, f,
                    "phi(r) = e r with e the generated idempotent");
  }

  const auto& table = std::get<FiniteTable>(hom);
  MElement m;
  for (const auto& [alpha, entry] : table.entries) {
    if (auto bad = check_table_entry(alpha, entry)) return *bad;
    if (!e.value_at(Ordinal::finite(alpha)).constant().is_one()) {
      return InvalidHomVerdict{alpha, "e_" + std::to_string(alpha) + " is not in the ideal"};
    }
    for (const auto& [b, k] : entry.values) m.values.emplace(b, k);
  }
  return verified(lambda, std::move(m), &table, f,
                  "m = sum of the table values; phi vanishes on the rest of the ideal");
}

Verdict socle_sum(const SymbolicCardinal& lambda, const SocleDirectSum& s, const HomDescriptor& hom) {
  const SupportDescriptor& a = s.index_set;
  const auto* table = std::get_if<FiniteTable>(&hom);
  FieldDescriptor f = table != nullptr ? table_field(*table, s.field) : s.field;

  MElement m;
  std::vector<std::uint64_t> domain;
  if (table != nullptr) {
    for (const auto& [alpha, entry] : table->entries) {
      if (auto bad = check_table_entry(alpha, entry)) return *bad;
      if (a.is_explicit() && !std::binary_search(a.coords().begin(), a.coords().end(), alpha)) {
        return InvalidHomVerdict{alpha, "e_" + std::to_string(alpha) + " is not in the ideal"};
      }
      for (const auto& [b, k] : entry.values) m.values.emplace(b, k);
      domain.push_back(alpha);
    }
  }

  // The remainder of A carries the inclusion, forcing m = 1 there.
  SymbolicCardinal required;
  if (a.is_explicit()) {
    std::uint64_t count = 0;
    for (auto alpha : a.coords()) {
      if (std::find(domain.begin(), domain.end(), alpha) != domain.end()) continue;
      m.values.emplace(alpha, FieldValue::one(f));
      ++count;
    }
    required = SymbolicCardinal::fin(count);
  } else {
    required = a.set().cardinality;
    std::string tag = a.set().tag;
    if (!domain.empty()) {
      tag += " \\ {";
      for (std::size_t i = 0; i < domain.size(); ++i) tag += (i ? "," : "") + std::to_string(domain[i]);
      tag += "}";
    }
    m.indicator = SymbolicSet{required, std::move(tag)};
  }
  if (!(required < lambda)) {
    return Fails{required, lambda,
                 "an extension m must equal 1 on a set of that size, but elements of M_" + lambda.to_string() +
                     " have smaller support"};
  }
  return verified(lambda, std::move(m), table, f, "m = table values plus 1 on the rest of the index set");
}

}  // namespace

Verdict baer_extend(const SymbolicCardinal& lambda, const IdealDescriptor& ideal, const HomDescriptor& hom) {
  if (!lambda.is_infinite()) {
    throw Error(ErrorKind::BadCardinal, "lambda must be at least aleph:0, got " + lambda.to_string());
  }
  if (const auto* fg = std::get_if<FinitelyGenerated>(&ideal)) return finitely_generated(lambda, *fg, hom);
  return socle_sum(lambda, std::get<SocleDirectSum>(ideal), hom);
}

std::pair<IdealDescriptor, HomDescriptor> strictness_witness(const SymbolicCardinal& lambda) {
  if (!lambda.is_infinite() || SymbolicCardinal::kappa() < lambda) {
    throw Error(ErrorKind::BadCardinal, "strictness witnesses exist for aleph:0 <= lambda <= kappa, got " +
                                            lambda.to_string());
  }
  return {SocleDirectSum{SupportDescriptor::symbolic(lambda, "A_" + lambda.to_string()), FieldDescriptor::rationals()},
          Inclusion{}};
}

}  // namespace loewy
