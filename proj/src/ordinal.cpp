#include "loewy/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "loewy/error.hpp"

namespace loewy {

Ordinal::Ordinal(std::vector<CnfTerm> terms) {
  if (!terms.empty()) rep_ = std::make_shared<const std::vector<CnfTerm>>(std::move(terms));
}

const std::vector<CnfTerm>& Ordinal::terms() const noexcept {
  static const std::vector<CnfTerm> empty;
  return rep_ ? *rep_ : empty;
}

Ordinal Ordinal::finite(std::uint64_t n) {
  if (n == 0) return {};
  return Ordinal(std::vector<CnfTerm>{CnfTerm{Ordinal{}, n}});
}

Ordinal Ordinal::omega() { return omega_power(finite(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient) {
  if (coefficient == 0) return {};
  return Ordinal(std::vector<CnfTerm>{CnfTerm{exponent, coefficient}});
}

bool Ordinal::is_finite() const noexcept {
  return terms().empty() || (terms().size() == 1 && terms()[0].exponent.is_zero());
}

bool Ordinal::is_successor() const noexcept {
  return !terms().empty() && terms().back().exponent.is_zero();
}

bool Ordinal::is_limit() const noexcept {
  return !terms().empty() && !terms().back().exponent.is_zero();
}

std::optional<std::uint64_t> Ordinal::to_finite() const noexcept {
  if (terms().empty()) return 0;
  if (!is_finite()) return std::nullopt;
  return terms()[0].coefficient;
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) {
    throw Error(ErrorKind::BadOrdinals, to_string() + " is not a successor ordinal");
  }
  std::vector<CnfTerm> t = terms();
  if (--t.back().coefficient == 0) t.pop_back();
  return Ordinal(std::move(t));
}

Ordinal Ordinal::leading_exponent() const {
  return terms().empty() ? Ordinal{} : terms().front().exponent;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  auto n = std::min(a.terms().size(), b.terms().size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms()[i].exponent <=> b.terms()[i].exponent; c != 0) return c;
    if (auto c = a.terms()[i].coefficient <=> b.terms()[i].coefficient; c != 0) return c;
  }
  return a.terms().size() <=> b.terms().size();
}

bool operator==(const Ordinal& a, const Ordinal& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.terms().size() != b.terms().size()) return false;
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    if (a.terms()[i].coefficient != b.terms()[i].coefficient) return false;
    if (!(a.terms()[i].exponent == b.terms()[i].exponent)) return false;
  }
  return true;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<CnfTerm> r;
  for (const auto& t : a.terms()) {
    auto c = t.exponent <=> lead;
    if (c > 0) {
      r.push_back(t);
    } else {
      if (c == 0) {
        r.push_back(CnfTerm{lead, t.coefficient + b.terms().front().coefficient});
        r.insert(r.end(), b.terms().begin() + 1, b.terms().end());
        return Ordinal(std::move(r));
      }
      break;
    }
  }
  r.insert(r.end(), b.terms().begin(), b.terms().end());
  return Ordinal(std::move(r));
}

OrdinalClass ord_classify(const Ordinal& a) {
  if (a.is_zero()) return {OrdinalKind::Zero, std::nullopt};
  if (a.is_successor()) return {OrdinalKind::Successor, a.predecessor()};
  return {OrdinalKind::Limit, std::nullopt};
}

std::string Ordinal::to_string() const {
  if (terms().empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms().size(); ++i) {
    const auto& t = terms()[i];
    if (i != 0) out += '+';
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (!(t.exponent == finite(1))) {
      out += '^';
      if (t.exponent.is_finite() || t.exponent == omega()) {
        out += t.exponent.to_string();
      } else {
        out += '(' + t.exponent.to_string() + ')';
      }
    }
    if (t.coefficient != 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view src) : src_(src) {}

  Ordinal parse_all() {
    Ordinal r = sum();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return r;
  }

 private:
  Ordinal sum() {
    Ordinal r = term();
    while (eat('+')) r = r + term();
    return r;
  }

  Ordinal term() {
    skip_ws();
    if (peek_omega()) {
      take_omega();
      Ordinal exponent = Ordinal::finite(1);
      if (eat('^')) exponent = exponent_atom();
      std::uint64_t coeff = 1;
      if (eat('*')) coeff = natural();
      return Ordinal::omega_power(exponent, coeff);
    }
    return Ordinal::finite(natural());
  }

  Ordinal exponent_atom() {
    skip_ws();
    if (eat('(')) {
      Ordinal e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (peek_omega()) {
      take_omega();
      return Ordinal::omega();
    }
    return Ordinal::finite(natural());
  }

  std::uint64_t natural() {
    skip_ws();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      fail("expected a natural number or 'w'");
    }
    std::uint64_t v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      auto d = static_cast<std::uint64_t>(src_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  bool peek_omega() {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == 'w') return true;
    return src_.substr(pos_).starts_with("\xCF\x89");  // UTF-8 omega
  }

  void take_omega() { pos_ += src_[pos_] == 'w' ? 1 : 2; }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, "ordinal: " + msg); }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) { return OrdinalParser(text).parse_all(); }

std::vector<Ordinal> small_ordinals_below(const Ordinal& bound, std::uint64_t max_coeff,
                                          const Ordinal& cap) {
  std::vector<Ordinal> out;
  if (bound.is_zero()) return out;
  if (bound.is_finite()) {
    std::uint64_t top = std::min(*bound.to_finite() - 1, max_coeff);
    for (std::uint64_t n = 0; n <= top; ++n) {
      auto o = Ordinal::finite(n);
      if (o <= cap) out.push_back(o);
    }
    return out;
  }
  Ordinal lead = bound.leading_exponent();
  Ordinal exp_bound = lead + Ordinal::finite(1);
  std::vector<Ordinal> exponents = small_ordinals_below(exp_bound, max_coeff, exp_bound);

  auto keep = [&](const Ordinal& o) {
    if (o < bound && o <= cap) out.push_back(o);
  };
  keep(Ordinal{});
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    for (std::uint64_t c1 = 1; c1 <= max_coeff; ++c1) {
      Ordinal first = Ordinal::omega_power(exponents[i], c1);
      keep(first);
      for (std::size_t j = 0; j < i; ++j) {
        for (std::uint64_t c2 = 1; c2 <= max_coeff; ++c2) {
          keep(first + Ordinal::omega_power(exponents[j], c2));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace loewy
