#include "loewy/poly.hpp"

#include "loewy/error.hpp"

namespace loewy {

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  // Primes are below 2^31, so reduced operands multiply without overflow.
  return (a % p) * (b % p) % p;
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e != 0) {
    if (e & 1U) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint64_t p, std::uint64_t c) { return FpPoly(p, {c}); }

FpPoly FpPoly::monomial(std::uint64_t p, std::uint64_t c, std::size_t degree) {
  std::vector<std::uint64_t> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  FpPoly r = c_.size() >= o.c_.size() ? *this : o;
  const FpPoly& s = c_.size() >= o.c_.size() ? o : *this;
  for (std::size_t i = 0; i < s.c_.size(); ++i) {
    r.c_[i] += s.c_[i];
    if (r.c_[i] >= p_) r.c_[i] -= p_;
  }
  r.trim();
  return r;
}

FpPoly FpPoly::operator-() const {
  FpPoly r = *this;
  for (auto& c : r.c_) c = c == 0 ? 0 : p_ - c;
  return r;
}

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + (-o); }

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return FpPoly(p_, {});
  std::vector<std::uint64_t> v(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      v[i + j] = (v[i + j] + mod_mul(c_[i], o.c_[j], p_)) % p_;
    }
  }
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::scaled(std::uint64_t k) const {
  FpPoly r = *this;
  for (auto& c : r.c_) c = mod_mul(c, k, p_);
  r.trim();
  return r;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  FpPoly rem = *this;
  if (degree() < divisor.degree()) return {FpPoly(p_, {}), rem};
  std::vector<std::uint64_t> q(static_cast<std::size_t>(degree() - divisor.degree() + 1), 0);
  std::uint64_t inv_lead = mod_inv(divisor.leading(), p_);
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    auto shift = static_cast<std::size_t>(rem.degree() - divisor.degree());
    std::uint64_t factor = mod_mul(rem.leading(), inv_lead, p_);
    q[shift] = factor;
    for (std::size_t i = 0; i < divisor.c_.size(); ++i) {
      auto sub = mod_mul(factor, divisor.c_[i], p_);
      auto& slot = rem.c_[i + shift];
      slot = (slot + p_ - sub) % p_;
    }
    rem.trim();
  }
  return {FpPoly(p_, std::move(q)), rem};
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inv(leading(), p_));
}

std::string FpPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    std::uint64_t c = c_[k];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + '*';
    out += var;
    if (k > 1) out += '^' + std::to_string(k);
  }
  return out;
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const std::uint64_t p = f.modulus();
  // Enumerate monic candidates of degree 1..deg/2.
  for (long d = 1; d <= f.degree() / 2; ++d) {
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<std::uint64_t> coeffs = digits;
      coeffs.push_back(1);
      FpPoly g(p, coeffs);
      if (f.divmod(g).second.is_zero()) return false;
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return true;
}

}  // namespace loewy
