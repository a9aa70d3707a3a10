#include "qfp/poly.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "qfp/error.hpp"

namespace qfp {

void Monomial::set(int i, std::uint32_t e) {
  if (e > 0xFFFF) throw RangeError("exponent " + std::to_string(e) + " exceeds 16 bits");
  deg = deg - exp[static_cast<std::size_t>(i)] + e;
  exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
}

Monomial make_monomial(std::span<const std::uint32_t> exps) {
  if (exps.size() > kMaxVars) throw RangeError("too many variables");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) m.set(static_cast<int>(i), exps[i]);
  return m;
}

Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint32_t e = std::uint32_t{a.exp[i]} + b.exp[i];
    if (e > 0xFFFF) throw RangeError("exponent overflow in monomial product");
    r.exp[i] = static_cast<std::uint16_t>(e);
  }
  r.deg = a.deg + b.deg;
  return r;
}

bool divides(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.exp[i] > b.exp[i]) return false;
  }
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
  r.deg = b.deg - a.deg;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
  Monomial r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exp[i] = std::max(a.exp[i], b.exp[i]);
    d += r.exp[i];
  }
  r.deg = d;
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.exp[i] && b.exp[i]) return false;
  }
  return true;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) noexcept {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  }
  return 0;
}

int lex_cmp(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
  }
  return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t w[2];
  std::memcpy(w, m.exp.data(), sizeof(w));
  std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ull;
  h ^= (w[1] + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

std::vector<std::string> default_names(int nvars) {
  std::vector<std::string> names;
  for (int i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

Ring::Ring(Prime p, int nvars, CoeffRing kind, std::vector<std::string> names)
    : p_(p), kind_(kind), nvars_(nvars) {
  if (nvars < 1 || nvars > kMaxVars) {
    throw RangeError("variable count must be in [1, " + std::to_string(kMaxVars) + "]");
  }
  if (names.empty()) names = default_names(nvars);
  if (static_cast<int>(names.size()) != nvars) throw ArgumentError("variable name count mismatch");
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

Ring Ring::with_kind(CoeffRing kind) const {
  Ring r = *this;
  r.kind_ = kind;
  return r;
}

Polynomial Polynomial::constant(const Ring& ring, std::uint64_t c) {
  return monomial(ring, Monomial{}, c);
}

Polynomial Polynomial::monomial(const Ring& ring, const Monomial& m, std::uint64_t c) {
  Polynomial f(ring);
  auto r = static_cast<std::uint32_t>(c % ring.modulus());
  if (r) f.terms_.push_back({m, r});
  return f;
}

Polynomial Polynomial::variable(const Ring& ring, int i) {
  if (i < 0 || i >= ring.nvars()) throw ArgumentError("variable index out of range");
  Monomial m;
  m.set(i, 1);
  return monomial(ring, m, 1);
}

Polynomial Polynomial::from_terms(const Ring& ring, std::vector<Term> terms) {
  const std::uint32_t mod = ring.modulus();
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_cmp(a.m, b.m) > 0; });
  Polynomial f(ring);
  f.terms_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    std::uint64_t c = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].m == terms[i].m; ++j) c += terms[j].c % mod;
    c %= mod;
    if (c) f.terms_.push_back({terms[i].m, static_cast<std::uint32_t>(c)});
    i = j;
  }
  return f;
}

Polynomial Polynomial::from_sorted(const Ring& ring, std::vector<Term> terms) {
  Polynomial f(ring);
  f.terms_ = std::move(terms);
  return f;
}

const Term& Polynomial::leading() const {
  if (terms_.empty()) throw ArgumentError("zero polynomial has no leading term");
  return terms_.front();
}

std::uint32_t Polynomial::total_degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.deg);
  return d;
}

bool Polynomial::is_homogeneous() const noexcept {
  for (const auto& t : terms_) {
    if (t.m.deg != terms_.front().m.deg) return false;
  }
  return true;
}

std::uint32_t Polynomial::coefficient(const Monomial& m) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return grevlex_cmp(t.m, x) > 0; });
  return it != terms_.end() && it->m == m ? it->c : 0;
}

std::uint32_t Polynomial::constant_term() const noexcept {
  return terms_.empty() || terms_.back().m.deg != 0 ? 0 : terms_.back().c;
}

std::array<std::uint32_t, kMaxVars> Polynomial::max_exponents() const noexcept {
  std::array<std::uint32_t, kMaxVars> mx{};
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kMaxVars; ++i) mx[i] = std::max<std::uint32_t>(mx[i], t.m.exp[i]);
  }
  return mx;
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (!ring_.compatible(o.ring_)) throw ArgumentError("polynomials live in different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_compatible(o);
  const std::uint32_t mod = ring_.modulus();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grevlex_cmp(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      std::uint32_t s = add_mod(terms_[i].c, o.terms_[j].c, mod);
      if (s) out.push_back({terms_[i].m, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), terms_.begin() + static_cast<std::ptrdiff_t>(i), terms_.end());
  out.insert(out.end(), o.terms_.begin() + static_cast<std::ptrdiff_t>(j), o.terms_.end());
  return from_sorted(ring_, std::move(out));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = ring_.modulus() - t.c;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const { return multiply(*this, o); }

Polynomial Polynomial::scaled(std::uint64_t c) const {
  const std::uint32_t mod = ring_.modulus();
  auto cc = static_cast<std::uint32_t>(c % mod);
  Polynomial r(ring_);
  if (!cc) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint32_t v = mul_mod(t.c, cc, mod);
    if (v) r.terms_.push_back({t.m, v});
  }
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, std::uint64_t c) const {
  Polynomial r = scaled(c);
  for (auto& t : r.terms_) t.m = mul(t.m, m);
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& names = ring_.names();
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    bool need_star = false;
    if (t.c != 1 || t.m.deg == 0) {
      out << t.c;
      need_star = true;
    }
    for (int i = 0; i < ring_.nvars(); ++i) {
      auto e = t.m[i];
      if (!e) continue;
      if (need_star) out << '*';
      out << names[static_cast<std::size_t>(i)];
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
  if (!a.ring_.compatible(b.ring_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
  }
  return true;
}

Polynomial derivative(const Polynomial& f, int var) {
  if (var < 0 || var >= f.ring().nvars()) throw ArgumentError("variable index out of range");
  const std::uint32_t mod = f.ring().modulus();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    auto e = t.m[var];
    if (!e) continue;
    std::uint32_t c = mul_mod(t.c, e % mod, mod);
    if (!c) continue;
    Monomial m = t.m;
    m.set(var, e - 1u);
    out.push_back({m, c});
  }
  return Polynomial::from_terms(f.ring(), std::move(out));
}

Polynomial lift(const Polynomial& f) {
  if (f.ring().kind() != CoeffRing::ModP) throw ArgumentError("lift expects an F_p polynomial");
  std::vector<Term> t(f.terms().begin(), f.terms().end());
  return Polynomial::from_sorted(f.ring().with_kind(CoeffRing::ModP2), std::move(t));
}

Polynomial reduce_mod_p(const Polynomial& f) {
  const std::uint32_t p = f.ring().p();
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    if (t.c % p) out.push_back({t.m, t.c % p});
  }
  return Polynomial::from_sorted(f.ring().with_kind(CoeffRing::ModP), std::move(out));
}

bool monomial_in_bracket(const Monomial& m, int nvars, std::uint64_t q) noexcept {
  for (int i = 0; i < nvars; ++i) {
    if (m[i] >= q) return true;
  }
  return false;
}

bool in_bracket_power(const Polynomial& f, std::uint64_t q) noexcept {
  for (const auto& t : f.terms()) {
    if (!monomial_in_bracket(t.m, f.ring().nvars(), q)) return false;
  }
  return true;
}

Polynomial truncate_bracket(const Polynomial& f, std::uint64_t q) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (!monomial_in_bracket(t.m, f.ring().nvars(), q)) out.push_back(t);
  }
  return Polynomial::from_sorted(f.ring(), std::move(out));
}

}  // namespace qfp
