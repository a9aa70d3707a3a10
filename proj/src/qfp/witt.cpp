#include "qfp/witt.hpp"

#include "qfp/error.hpp"

namespace qfp {

namespace {

BigInt ipow(const BigInt& b, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t k = 0; k < e; ++k) r *= b;
  return r;
}

BigInt reduce(const BigInt& v, const BigInt& m) {
  BigInt r = v % m;
  return r < 0 ? r + m : r;
}

void check_pair(const WittVector& a, const WittVector& b) {
  if (a.length() != b.length()) throw ArgumentError("Witt vectors of different length");
  if (!a.ring().compatible(b.ring())) throw ArgumentError("Witt vectors over different rings");
}

}  // namespace

void IntPoly::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPoly IntPoly::lift(const Polynomial& f) {
  if (f.ring().kind() != CoeffRing::ModP) throw ArgumentError("lift expects an F_p polynomial");
  IntPoly r;
  for (const auto& t : f.terms()) r.terms_.emplace(t.m, BigInt(t.c));
  return r;
}

IntPoly IntPoly::constant(const BigInt& c) {
  IntPoly r;
  r.add_term(Monomial{}, c);
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  IntPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  IntPoly r;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) r.add_term(mul(a, b), ca * cb);
  }
  return r;
}

IntPoly IntPoly::scaled(const BigInt& c) const {
  IntPoly r;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

IntPoly IntPoly::mod(const BigInt& m) const {
  IntPoly r;
  for (const auto& [mono, v] : terms_) r.add_term(mono, reduce(v, m));
  return r;
}

IntPoly IntPoly::divided(const BigInt& d) const {
  IntPoly r;
  for (const auto& [m, v] : terms_) {
    if (v % d != 0) throw InvariantError("ghost inversion: inexact division");
    r.add_term(m, v / d);
  }
  return r;
}

IntPoly IntPoly::pow_mod(std::uint64_t e, const BigInt& m) const {
  IntPoly result = constant(1).mod(m);
  IntPoly base = mod(m);
  while (e) {
    if (e & 1) result = (result * base).mod(m);
    e >>= 1;
    if (e) base = (base * base).mod(m);
  }
  return result;
}

Polynomial IntPoly::to_poly(const Ring& ring) const {
  std::vector<Term> out;
  const BigInt p = ring.p();
  for (const auto& [m, v] : terms_) {
    auto c = static_cast<std::uint32_t>(reduce(v, p));
    if (c) out.push_back({m, c});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

WittVector::WittVector(Ring ring, std::vector<Polynomial> components)
    : ring_(std::move(ring)), comps_(std::move(components)) {
  if (ring_.kind() != CoeffRing::ModP) throw ArgumentError("Witt vectors are taken over F_p polynomials");
  if (comps_.empty() || comps_.size() > kMaxLength) throw RangeError("Witt vector length must be 1..4");
  for (const auto& c : comps_) {
    if (!c.ring().compatible(ring_)) throw ArgumentError("Witt component lives in a different ring");
  }
}

WittVector WittVector::zero(const Ring& ring, std::size_t n) {
  return WittVector(ring, std::vector<Polynomial>(n, Polynomial(ring)));
}

WittVector WittVector::teichmuller(const Polynomial& r, std::size_t n) {
  std::vector<Polynomial> c(n, Polynomial(r.ring()));
  if (n) c[0] = r;
  return WittVector(r.ring(), std::move(c));
}

WittVector WittVector::integer(const Ring& ring, std::size_t n, std::int64_t k) {
  std::vector<IntPoly> g(n, IntPoly::constant(k));
  return from_ghost(ring, g);
}

std::vector<IntPoly> WittVector::ghost() const {
  const std::uint32_t p = ring_.p();
  const std::size_t n = comps_.size();
  const BigInt modulus = ipow(p, n);
  std::vector<IntPoly> lifts;
  for (const auto& c : comps_) lifts.push_back(IntPoly::lift(c));
  std::vector<IntPoly> w;
  for (std::size_t i = 0; i < n; ++i) {
    IntPoly acc;
    for (std::size_t j = 0; j <= i; ++j) {
      acc = acc + lifts[j].pow_mod(static_cast<std::uint64_t>(ipow(p, i - j)), modulus).scaled(ipow(p, j));
    }
    w.push_back(acc.mod(modulus));
  }
  return w;
}

WittVector from_ghost(const Ring& ring, const std::vector<IntPoly>& ghost) {
  const std::uint32_t p = ring.p();
  const std::size_t n = ghost.size();
  const BigInt modulus = ipow(p, n);
  std::vector<IntPoly> alpha;
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < n; ++i) {
    IntPoly num = ghost[i];
    for (std::size_t j = 0; j < i; ++j) {
      num = num - alpha[j].pow_mod(static_cast<std::uint64_t>(ipow(p, i - j)), modulus).scaled(ipow(p, j));
    }
    // Only the residue mod p of the quotient matters; lifts in [0, p) keep
    // later powers canonical.
    IntPoly a = num.mod(modulus).divided(ipow(p, i)).mod(BigInt(p));
    comps.push_back(a.to_poly(ring));
    alpha.push_back(std::move(a));
  }
  return WittVector(ring, std::move(comps));
}

bool ghost_congruent(const std::vector<IntPoly>& a, const std::vector<IntPoly>& b, std::uint32_t p) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const BigInt m = ipow(p, i + 1);
    if (!(a[i].mod(m) == b[i].mod(m))) return false;
  }
  return true;
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
  check_pair(a, b);
  auto ga = a.ghost(), gb = b.ghost();
  for (std::size_t i = 0; i < ga.size(); ++i) ga[i] = ga[i] + gb[i];
  return from_ghost(a.ring(), ga);
}

WittVector witt_neg(const WittVector& a) {
  auto g = a.ghost();
  for (auto& w : g) w = w.scaled(-1);
  return from_ghost(a.ring(), g);
}

WittVector witt_sub(const WittVector& a, const WittVector& b) {
  check_pair(a, b);
  auto ga = a.ghost(), gb = b.ghost();
  for (std::size_t i = 0; i < ga.size(); ++i) ga[i] = ga[i] - gb[i];
  return from_ghost(a.ring(), ga);
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
  check_pair(a, b);
  auto ga = a.ghost(), gb = b.ghost();
  const BigInt modulus = ipow(a.ring().p(), a.length());
  for (std::size_t i = 0; i < ga.size(); ++i) ga[i] = (ga[i] * gb[i]).mod(modulus);
  return from_ghost(a.ring(), ga);
}

WittVector witt_frobenius(const WittVector& a) {
  std::vector<Polynomial> c;
  for (const auto& x : a.components()) c.push_back(frobenius_power(x, 1));
  return WittVector(a.ring(), std::move(c));
}

WittVector verschiebung(const WittVector& a) {
  std::vector<Polynomial> c;
  c.push_back(Polynomial(a.ring()));
  for (std::size_t i = 0; i + 1 < a.length(); ++i) c.push_back(a[i]);
  return WittVector(a.ring(), std::move(c));
}

WittVector restriction(const WittVector& a, std::size_t m) {
  if (m == 0 || m > a.length()) throw RangeError("restriction length out of range");
  return WittVector(a.ring(), std::vector<Polynomial>(a.components().begin(), a.components().begin() + static_cast<long>(m)));
}

WittVector witt_times_p(const WittVector& a) {
  return witt_mul(WittVector::integer(a.ring(), a.length(), a.ring().p()), a);
}

Polynomial delta1_witt_oracle(const Polynomial& a) {
  if (a.ring().kind() != CoeffRing::ModP) throw ArgumentError("delta1 oracle expects an F_p polynomial");
  WittVector acc = WittVector::teichmuller(a, 2);
  for (const auto& t : a.terms()) {
    acc = witt_sub(acc, WittVector::teichmuller(Polynomial::monomial(a.ring(), t.m, t.c), 2));
  }
  if (!acc[0].is_zero()) throw InvariantError("delta1 oracle: first component did not cancel");
  return acc[1];
}

}  // namespace qfp
