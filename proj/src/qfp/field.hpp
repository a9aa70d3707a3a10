#ifndef QFP_FIELD_HPP
#define QFP_FIELD_HPP

#include <cstdint>
#include <span>

namespace qfp {

/// A prime characteristic. Construction checks primality; p must be small
/// enough that p^2 fits in 32 bits so that lifts to Z/p^2 stay word-sized.
class Prime {
 public:
  static constexpr std::uint32_t kMax = 65521;

  explicit Prime(std::uint64_t p);

  std::uint32_t value() const noexcept { return p_; }
  std::uint32_t squared() const noexcept { return p_ * p_; }
  operator std::uint32_t() const noexcept { return p_; }

  static bool is_prime(std::uint64_t n) noexcept;

  friend bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// Which coefficient ring a polynomial lives in: F_p or its lift Z/p^2.
enum class CoeffRing { ModP, ModP2 };

inline std::uint32_t modulus_of(Prime p, CoeffRing r) noexcept {
  return r == CoeffRing::ModP ? p.value() : p.squared();
}

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m) noexcept {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= m ? s - m : s);
}
inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m) noexcept {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + m - b);
}
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m) noexcept {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % m);
}
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t m) noexcept;

/// Inverse of a modulo m; throws ArgumentError when gcd(a, m) != 1.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t m);

/// Reduces a signed integer into [0, m).
std::uint32_t reduce_signed(std::int64_t v, std::uint32_t m) noexcept;

/// An element of Z/m with m in {p, p^2}.
class Residue {
 public:
  Residue(std::uint64_t value, std::uint32_t modulus);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  Residue operator+(Residue o) const;
  Residue operator-(Residue o) const;
  Residue operator*(Residue o) const;
  Residue operator-() const;
  Residue inverse() const;

  friend bool operator==(Residue a, Residue b) noexcept = default;

 private:
  void check_same(Residue o) const;

  std::uint32_t value_;
  std::uint32_t modulus_;
};

/// N! / prod(parts_i!) reduced mod p or p^2. Works with factorials that have
/// their p-factors stripped plus an exact p-adic valuation count, so nothing
/// wraps around.
Residue multinomial_mod(std::uint64_t n, std::span<const std::uint64_t> parts, Prime p,
                        CoeffRing modulus);

/// (1/p) * multinomial(p; alpha) mod p for a composition alpha of p with every
/// part at most p-1 and at least two nonzero parts.
Residue delta_coefficient(std::span<const std::uint64_t> alpha, Prime p);

/// p-adic valuation of n! (Legendre).
std::uint64_t factorial_valuation(std::uint64_t n, std::uint32_t p) noexcept;

}  // namespace qfp

#endif  // QFP_FIELD_HPP
