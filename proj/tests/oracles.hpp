// Independent reference computations used by the unit and acceptance tests.
// Each one deliberately avoids the production code path it is checking.
#ifndef QFP_TESTS_ORACLES_HPP
#define QFP_TESTS_ORACLES_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "qfp/poly.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using qfp::Monomial;
using qfp::Polynomial;
using qfp::Ring;

inline cpp_int factorial(unsigned n) {
  cpp_int r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline cpp_int multinomial(unsigned n, const std::vector<unsigned>& parts) {
  cpp_int r = factorial(n);
  for (unsigned a : parts) r /= factorial(a);
  return r;
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.exp < b.exp; }
};

using TermMap = std::map<Monomial, std::uint64_t, MonoLess>;

inline TermMap to_map(const Polynomial& f) {
  TermMap m;
  for (const auto& t : f.terms()) m[t.m] = t.c;
  return m;
}

inline Polynomial from_map(const Ring& ring, const TermMap& m) {
  std::vector<qfp::Term> terms;
  for (const auto& [mono, c] : m) {
    if (c % ring.modulus()) terms.push_back({mono, static_cast<std::uint32_t>(c % ring.modulus())});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

/// Schoolbook product through an ordered map.
inline Polynomial naive_multiply(const Polynomial& f, const Polynomial& g) {
  const std::uint64_t mod = f.ring().modulus();
  TermMap acc;
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      Monomial m;
      for (int i = 0; i < qfp::kMaxVars; ++i) m.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(a.m[i] + b.m[i]);
      m.deg = a.m.deg + b.m.deg;
      acc[m] = (acc[m] + std::uint64_t{a.c} * b.c) % mod;
    }
  }
  return from_map(f.ring(), acc);
}

/// f^N by N-1 naive multiplications.
inline Polynomial naive_power(const Polynomial& f, unsigned n) {
  Polynomial r = Polynomial::constant(f.ring(), 1);
  for (unsigned k = 0; k < n; ++k) r = naive_multiply(r, f);
  return r;
}

inline Polynomial drop_bracket(const Polynomial& f, std::uint64_t q) {
  TermMap m;
  for (const auto& t : f.terms()) {
    bool in = false;
    for (int i = 0; i < f.ring().nvars(); ++i) in = in || t.m[i] >= q;
    if (!in) m[t.m] = t.c;
  }
  return from_map(f.ring(), m);
}

inline std::vector<Monomial> monomials_of_degree(int n, unsigned d) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, unsigned left) -> void {
    if (i == n - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(qfp::make_monomial(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// Rank over F_p of a dense matrix, plain Gaussian elimination.
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] % p == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    std::uint64_t inv = 1;
    for (std::uint64_t k = 1; k < p; ++k) {
      if (a[r][c] % p * k % p == 1) inv = k;
    }
    for (auto& x : a[r]) x = x % p * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] % p == 0) continue;
      std::uint64_t f = a[i][c] % p;
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = (a[i][k] % p + p * p - f * a[r][k] % p) % p;
    }
    ++r;
  }
  return r;
}

/// Coefficient vector of a polynomial against a monomial list.
inline std::vector<std::uint64_t> coords(const Polynomial& f, const std::vector<Monomial>& basis) {
  std::vector<std::uint64_t> v(basis.size(), 0);
  for (std::size_t k = 0; k < basis.size(); ++k) v[k] = f.coefficient(basis[k]);
  return v;
}

/// dim_Fp of the degree-D piece of the ideal generated by homogeneous gens.
inline std::size_t ideal_piece_dim(const std::vector<Polynomial>& gens, int n, unsigned d, std::uint64_t p) {
  auto mons = monomials_of_degree(n, d);
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& g : gens) {
    if (g.is_zero() || g.total_degree() > d) continue;
    for (const auto& m : monomials_of_degree(n, d - g.total_degree())) rows.push_back(coords(g.mul_term(m, 1), mons));
  }
  return rank_mod_p(rows, p);
}

/// True iff f (homogeneous of degree D) lies in the ideal, by linear algebra.
inline bool graded_member(const Polynomial& f, const std::vector<Polynomial>& gens, int n, std::uint64_t p) {
  if (f.is_zero()) return true;
  unsigned d = f.total_degree();
  auto mons = monomials_of_degree(n, d);
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& g : gens) {
    if (g.is_zero() || g.total_degree() > d) continue;
    for (const auto& m : monomials_of_degree(n, d - g.total_degree())) rows.push_back(coords(g.mul_term(m, 1), mons));
  }
  std::size_t r0 = rank_mod_p(rows, p);
  rows.push_back(coords(f, mons));
  return rank_mod_p(rows, p) == r0;
}

/// Delta_1 over the integers: ((sum c_i M_i)^p - sum c_i^p M_i^p) / p with
/// coefficients lifted to [0, p), then reduced mod p.
inline Polynomial integer_delta1(const Polynomial& a) {
  const unsigned p = a.ring().p();
  std::map<Monomial, cpp_int, MonoLess> acc{{Monomial{}, cpp_int(1)}};
  for (unsigned k = 0; k < p; ++k) {
    std::map<Monomial, cpp_int, MonoLess> next;
    for (const auto& [m, c] : acc) {
      for (const auto& t : a.terms()) next[qfp::mul(m, t.m)] += c * t.c;
    }
    acc = std::move(next);
  }
  for (const auto& t : a.terms()) {
    Monomial m;
    for (unsigned k = 0; k < p; ++k) m = qfp::mul(m, t.m);
    acc[m] -= boost::multiprecision::pow(cpp_int(t.c), p);
  }
  TermMap out;
  for (const auto& [m, c] : acc) {
    if (c % p != 0) throw std::logic_error("integer_delta1: not divisible");
    cpp_int q = c / p % p;
    if (q < 0) q += p;
    out[m] = static_cast<std::uint64_t>(q);
  }
  return from_map(a.ring(), out);
}

/// Is every term of f outside (x_1^q..x_n^q)? i.e. does f escape m^[q]?
inline bool escapes_bracket(const Polynomial& f, std::uint64_t q) { return !drop_bracket(f, q).is_zero(); }

/// Random polynomial with up to `terms` terms of degree <= maxdeg.
inline Polynomial random_poly(std::mt19937_64& rng, const Ring& ring, int terms, unsigned maxdeg,
                              bool homogeneous = false) {
  std::vector<qfp::Term> ts;
  std::uniform_int_distribution<std::uint32_t> coef(1, ring.modulus() - 1);
  std::uniform_int_distribution<unsigned> deg(0, maxdeg);
  std::uniform_int_distribution<int> var(0, ring.nvars() - 1);
  unsigned hd = homogeneous ? std::max(1u, deg(rng)) : 0;
  for (int k = 0; k < terms; ++k) {
    std::vector<std::uint32_t> e(static_cast<std::size_t>(ring.nvars()), 0);
    unsigned d = homogeneous ? hd : deg(rng);
    for (unsigned s = 0; s < d; ++s) ++e[static_cast<std::size_t>(var(rng))];
    ts.push_back({qfp::make_monomial(e), coef(rng)});
  }
  return Polynomial::from_terms(ring, std::move(ts));
}

}  // namespace oracle

#endif  // QFP_TESTS_ORACLES_HPP
