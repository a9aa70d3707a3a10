#ifndef QFP_WITT_HPP
#define QFP_WITT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "qfp/poly.hpp"

namespace qfp {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial with integer coefficients; used for ghost components.
class IntPoly {
 public:
  struct Less {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept { return a.exp < b.exp; }
  };
  using Map = std::map<Monomial, BigInt, Less>;

  IntPoly() = default;
  /// Lifts coefficients of an F_p polynomial to [0, p).
  static IntPoly lift(const Polynomial& f);
  static IntPoly constant(const BigInt& c);

  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly scaled(const BigInt& c) const;
  /// Coefficients reduced into [0, m).
  IntPoly mod(const BigInt& m) const;
  /// Exact division; throws InvariantError if some coefficient is not divisible.
  IntPoly divided(const BigInt& d) const;
  /// Power with every intermediate reduced mod m.
  IntPoly pow_mod(std::uint64_t e, const BigInt& m) const;
  /// Reduction mod p into a polynomial over `ring`.
  Polynomial to_poly(const Ring& ring) const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const BigInt& c);
  Map terms_;
};

/// Truncated p-typical Witt vector over F_p[x_1..x_n], length 1..4.
class WittVector {
 public:
  static constexpr std::size_t kMaxLength = 4;

  WittVector(Ring ring, std::vector<Polynomial> components);

  static WittVector zero(const Ring& ring, std::size_t n);
  static WittVector teichmuller(const Polynomial& r, std::size_t n);
  /// Image of the integer k.
  static WittVector integer(const Ring& ring, std::size_t n, std::int64_t k);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t length() const noexcept { return comps_.size(); }
  const Polynomial& operator[](std::size_t i) const { return comps_.at(i); }
  const std::vector<Polynomial>& components() const noexcept { return comps_; }

  /// w_i = sum_{j<=i} p^j a_j^{p^{i-j}} over the lifts, reduced mod p^length.
  std::vector<IntPoly> ghost() const;

  friend bool operator==(const WittVector& a, const WittVector& b) { return a.comps_ == b.comps_; }

 private:
  Ring ring_;
  std::vector<Polynomial> comps_;
};

/// Inverts the ghost map (exact divisions, checked) and reduces mod p.
WittVector from_ghost(const Ring& ring, const std::vector<IntPoly>& ghost);
/// Ghost vectors agree componentwise modulo p^{i+1}.
bool ghost_congruent(const std::vector<IntPoly>& a, const std::vector<IntPoly>& b, std::uint32_t p);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_sub(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_frobenius(const WittVector& a);
WittVector verschiebung(const WittVector& a);
/// W_n -> W_m for m <= n.
WittVector restriction(const WittVector& a, std::size_t m);
WittVector witt_times_p(const WittVector& a);

/// Second component of (a, 0) - sum_i (a_i M_i, 0) in W_2.
Polynomial delta1_witt_oracle(const Polynomial& a);

}  // namespace qfp

#endif  // QFP_WITT_HPP
