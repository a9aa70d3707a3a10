#ifndef QFP_GROEBNER_HPP
#define QFP_GROEBNER_HPP

#include <memory>
#include <mutex>
#include <vector>

#include "qfp/poly.hpp"

namespace qfp {

enum class OrderKind { Grevlex, Lex };

/// A monomial order, optionally applied to permuted variables:
/// `perm[k]` is the variable that plays the role of the k-th variable.
struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  std::vector<int> perm;

  int compare(const Monomial& a, const Monomial& b) const noexcept;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
};

/// Reduced, monic Groebner basis sorted by increasing leading monomial.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens,
                                       const MonomialOrder& order = MonomialOrder::grevlex());

/// Normal form of f modulo a Groebner basis for `order`.
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis,
                  const MonomialOrder& order = MonomialOrder::grevlex());

/// Leading term of f under `order`.
Term leading_term(const Polynomial& f, const MonomialOrder& order);

/// Ideal given by generators with a lazily computed, cached reduced basis.
/// Copies share the cache; computing it is thread-safe.
class Ideal {
 public:
  Ideal(Ring ring, std::vector<Polynomial> gens, MonomialOrder order = MonomialOrder::grevlex());

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<Polynomial>& basis() const;

  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  bool is_unit() const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Polynomial> basis;
  };

  Ring ring_;
  std::vector<Polynomial> gens_;
  MonomialOrder order_;
  std::shared_ptr<Cache> cache_;
};

bool ideal_equal(const Ideal& a, const Ideal& b);
/// A/I finite-dimensional: every variable has a pure power among leading terms.
bool zero_dimensional(const Ideal& ideal);
/// Every generator lies in (x_1^q, ..., x_n^q).
bool contained_in_monomial_ideal(const Ideal& ideal, std::uint64_t q);

/// Coefficients (c_1..c_N) with sum c_j h_j = 0.
using SyzygyVector = std::vector<Polynomial>;

/// Generators of the syzygy module of h (grevlex, Schreyer construction with
/// cofactor tracking). Zero entries contribute unit vectors. Every returned
/// vector is checked to be a syzygy.
std::vector<SyzygyVector> syzygy_generators(const std::vector<Polynomial>& h);

/// Evaluates sum sigma_j h_j.
Polynomial apply_syzygy(const SyzygyVector& sigma, const std::vector<Polynomial>& h);

}  // namespace qfp

#endif  // QFP_GROEBNER_HPP
