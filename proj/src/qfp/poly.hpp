#ifndef QFP_POLY_HPP
#define QFP_POLY_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfp/field.hpp"

namespace qfp {

inline constexpr int kMaxVars = 8;

/// Exponent vector with a cached total degree. Unused trailing slots are zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t deg = 0;

  std::uint16_t operator[](int i) const noexcept { return exp[static_cast<std::size_t>(i)]; }
  void set(int i, std::uint32_t e);

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.exp == b.exp; }
};

Monomial make_monomial(std::span<const std::uint32_t> exps);
/// Checked product; throws RangeError on 16-bit exponent overflow.
Monomial mul(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b) noexcept;  // a | b
Monomial quotient(const Monomial& b, const Monomial& a) noexcept;  // b / a, requires a | b
Monomial lcm(const Monomial& a, const Monomial& b) noexcept;
bool coprime(const Monomial& a, const Monomial& b) noexcept;

/// Graded reverse lexicographic comparison: negative, zero or positive.
int grevlex_cmp(const Monomial& a, const Monomial& b) noexcept;
int lex_cmp(const Monomial& a, const Monomial& b) noexcept;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Coefficient ring (F_p or Z/p^2) together with the variable names.
class Ring {
 public:
  Ring(Prime p, int nvars, CoeffRing kind = CoeffRing::ModP, std::vector<std::string> names = {});

  Prime prime() const noexcept { return p_; }
  std::uint32_t p() const noexcept { return p_.value(); }
  std::uint32_t modulus() const noexcept { return modulus_of(p_, kind_); }
  CoeffRing kind() const noexcept { return kind_; }
  int nvars() const noexcept { return nvars_; }
  const std::vector<std::string>& names() const noexcept { return *names_; }

  Ring with_kind(CoeffRing kind) const;

  /// Names and kind agree on arithmetic purposes (names are ignored).
  bool compatible(const Ring& o) const noexcept {
    return p_ == o.p_ && kind_ == o.kind_ && nvars_ == o.nvars_;
  }

 private:
  Prime p_;
  CoeffRing kind_;
  int nvars_;
  std::shared_ptr<const std::vector<std::string>> names_;
};

std::vector<std::string> default_names(int nvars);

struct Term {
  Monomial m;
  std::uint32_t c;
};

/// Sparse multivariate polynomial. Terms are kept sorted by descending grevlex
/// order with no zero coefficients; the value is immutable once built.
class Polynomial {
 public:
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const Ring& ring, std::uint64_t c);
  static Polynomial monomial(const Ring& ring, const Monomial& m, std::uint64_t c = 1);
  static Polynomial variable(const Ring& ring, int i);
  /// Accepts unsorted terms with repeats; combines, reduces and sorts.
  static Polynomial from_terms(const Ring& ring, std::vector<Term> terms);
  /// Terms must already be sorted, combined and nonzero.
  static Polynomial from_sorted(const Ring& ring, std::vector<Term> terms);

  const Ring& ring() const noexcept { return ring_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  const Term& leading() const;

  std::uint32_t total_degree() const noexcept;
  bool is_homogeneous() const noexcept;
  std::uint32_t coefficient(const Monomial& m) const noexcept;
  std::uint32_t constant_term() const noexcept;
  std::array<std::uint32_t, kMaxVars> max_exponents() const noexcept;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(std::uint64_t c) const;
  Polynomial mul_term(const Monomial& m, std::uint64_t c) const;

  /// Canonical text: grevlex-descending terms, coefficients in [0, m).
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept;

 private:
  void check_compatible(const Polynomial& o) const;

  Ring ring_;
  std::vector<Term> terms_;
};

/// Exact product; uses the dense box kernel when the result support is dense.
Polynomial multiply(const Polynomial& f, const Polynomial& g);
/// Product with every monomial having some exponent >= q discarded.
Polynomial multiply_mod_bracket(const Polynomial& f, const Polynomial& g, std::uint64_t q);
/// Drops every term lying in (x_1^q, ..., x_n^q).
Polynomial truncate_bracket(const Polynomial& f, std::uint64_t q);
bool in_bracket_power(const Polynomial& f, std::uint64_t q) noexcept;
bool monomial_in_bracket(const Monomial& m, int nvars, std::uint64_t q) noexcept;

/// f^(p^e) over F_p: exponents scaled by p^e, coefficients unchanged.
Polynomial frobenius_power(const Polynomial& f, unsigned e);
/// f^N; over F_p via the base-p digits of N and Frobenius powers.
Polynomial power(const Polynomial& f, std::uint64_t n);
/// f^N reduced modulo m^[q] for q a power of p.
Polynomial pow_mod_bracket(const Polynomial& f, std::uint64_t n, std::uint64_t q);

Polynomial derivative(const Polynomial& f, int var);
/// Reinterpret F_p coefficients in [0, p) as elements of Z/p^2.
Polynomial lift(const Polynomial& f);
Polynomial reduce_mod_p(const Polynomial& f);

/// Parses the polynomial grammar. `vars` lists the declared variable names;
/// each may also be written with an underscore before its index (x1 / x_1).
Polynomial parse_poly(std::string_view text, Prime p, const std::vector<std::string>& vars);

struct Grading {
  std::vector<std::uint32_t> weights;
  std::uint64_t degree = 0;

  bool standard() const noexcept;
};

std::uint64_t weighted_degree(const Monomial& m, std::span<const std::uint32_t> weights) noexcept;
/// Minimal positive integer weights making f weighted-homogeneous, if any.
std::optional<Grading> find_grading(const Polynomial& f);

}  // namespace qfp

#endif  // QFP_POLY_HPP
