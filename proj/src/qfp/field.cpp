#include "qfp/field.hpp"

#include <numeric>
#include <utility>
#include <string>

#include "qfp/error.hpp"

namespace qfp {

bool Prime::is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t p) {
  if (p > kMax) {
    throw RangeError("prime " + std::to_string(p) + " exceeds the supported bound " +
                     std::to_string(kMax));
  }
  if (!is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t m) noexcept {
  std::uint64_t r = 1 % m;
  std::uint64_t x = a % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = m, new_r = a % m;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw ArgumentError(std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return reduce_signed(t, m);
}

std::uint32_t reduce_signed(std::int64_t v, std::uint32_t m) noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

Residue::Residue(std::uint64_t value, std::uint32_t modulus)
    : value_(static_cast<std::uint32_t>(value % modulus)), modulus_(modulus) {}

void Residue::check_same(Residue o) const {
  if (o.modulus_ != modulus_) throw ArgumentError("residue modulus mismatch");
}

Residue Residue::operator+(Residue o) const {
  check_same(o);
  return {add_mod(value_, o.value_, modulus_), modulus_};
}
Residue Residue::operator-(Residue o) const {
  check_same(o);
  return {sub_mod(value_, o.value_, modulus_), modulus_};
}
Residue Residue::operator*(Residue o) const {
  check_same(o);
  return {mul_mod(value_, o.value_, modulus_), modulus_};
}
Residue Residue::operator-() const { return {sub_mod(0, value_, modulus_), modulus_}; }
Residue Residue::inverse() const { return {inv_mod(value_, modulus_), modulus_}; }

std::uint64_t factorial_valuation(std::uint64_t n, std::uint32_t p) noexcept {
  std::uint64_t v = 0;
  while (n) {
    n /= p;
    v += n;
  }
  return v;
}

namespace {

// n! with every factor of p removed, mod m (m a power of p).
std::uint32_t stripped_factorial(std::uint64_t n, std::uint32_t p, std::uint32_t m) {
  std::uint64_t acc = 1 % m;
  for (std::uint64_t k = 2; k <= n; ++k) {
    std::uint64_t j = k;
    while (j % p == 0) j /= p;
    acc = acc * (j % m) % m;
  }
  return static_cast<std::uint32_t>(acc);
}

}  // namespace

Residue multinomial_mod(std::uint64_t n, std::span<const std::uint64_t> parts, Prime p,
                        CoeffRing modulus) {
  std::uint64_t sum = 0;
  for (auto a : parts) sum += a;
  if (sum != n) throw ArgumentError("multinomial parts do not sum to N");

  const std::uint32_t m = modulus_of(p, modulus);
  std::uint64_t val = factorial_valuation(n, p);
  std::uint64_t denom = 1 % m;
  for (auto a : parts) {
    val -= factorial_valuation(a, p);
    denom = denom * stripped_factorial(a, p, m) % m;
  }
  const std::uint64_t max_val = modulus == CoeffRing::ModP ? 1 : 2;
  if (val >= max_val) return {0, m};
  std::uint64_t unit = std::uint64_t{stripped_factorial(n, p, m)} *
                       inv_mod(static_cast<std::uint32_t>(denom), m) % m;
  for (std::uint64_t i = 0; i < val; ++i) unit = unit * p.value() % m;
  return {unit, m};
}

Residue delta_coefficient(std::span<const std::uint64_t> alpha, Prime p) {
  std::uint64_t sum = 0;
  int nonzero = 0;
  for (auto a : alpha) {
    if (a >= p.value()) throw ArgumentError("delta coefficient part must be at most p-1");
    sum += a;
    nonzero += a != 0;
  }
  if (sum != p.value()) throw ArgumentError("delta coefficient parts must sum to p");
  if (nonzero < 2) throw ArgumentError("delta coefficient needs at least two nonzero parts");
  Residue full = multinomial_mod(p.value(), alpha, p, CoeffRing::ModP2);
  if (full.value() % p.value() != 0) throw InvariantError("multinomial(p; alpha) not divisible by p");
  return {full.value() / p.value(), p.value()};
}

}  // namespace qfp
