// Multiplication kernels and powering.
//
// The dense kernel maps exponent vectors into a box with additive strides, so
// the index of a product is the sum of the factor indices. For two homogeneous
// factors the last variable is implied by the degree and is dropped from the
// box (the "slab"). Sparse products fall back to a hash accumulator.

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "qfp/error.hpp"
#include "qfp/poly.hpp"

namespace qfp {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 23;

struct Layout {
  int dims = 0;  // variables stored in the box
  std::array<std::uint64_t, kMaxVars> extent{};
  std::array<std::uint64_t, kMaxVars> stride{};
  std::uint64_t size = 1;
  bool slab = false;
  std::uint32_t slab_degree = 0;
  int nvars = 0;
};

std::uint64_t index_of(const Layout& L, const Monomial& m) noexcept {
  std::uint64_t idx = 0;
  for (int i = 0; i < L.dims; ++i) idx += m[i] * L.stride[static_cast<std::size_t>(i)];
  return idx;
}

Monomial decode(const Layout& L, std::uint64_t idx) {
  Monomial m;
  std::uint32_t sum = 0;
  for (int i = 0; i < L.dims; ++i) {
    auto e = static_cast<std::uint32_t>(idx % L.extent[static_cast<std::size_t>(i)]);
    idx /= L.extent[static_cast<std::size_t>(i)];
    m.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
    sum += e;
  }
  if (L.slab) {
    m.exp[static_cast<std::size_t>(L.nvars - 1)] = static_cast<std::uint16_t>(L.slab_degree - sum);
    sum = L.slab_degree;
  }
  m.deg = sum;
  return m;
}

bool lazy_ok(std::uint32_t mod, std::size_t pairs_per_slot, std::uint64_t extra = 1) {
  const unsigned __int128 bound =
      static_cast<unsigned __int128>(mod - 1) * (mod - 1) * pairs_per_slot * extra;
  return bound < (static_cast<unsigned __int128>(1) << 63);
}

std::vector<Term> sorted_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_cmp(a.m, b.m) > 0; });
  return terms;
}

Polynomial multiply_impl(const Polynomial& f, const Polynomial& g, std::uint64_t q) {
  if (!f.ring().compatible(g.ring())) throw ArgumentError("polynomials live in different rings");
  const Ring& ring = f.ring();
  if (f.is_zero() || g.is_zero()) return Polynomial(ring);
  const int n = ring.nvars();
  const std::uint32_t mod = ring.modulus();
  const bool truncate = q != 0;

  auto mf = f.max_exponents();
  auto mg = g.max_exponents();
  std::array<std::uint64_t, kMaxVars> top{};
  for (int i = 0; i < n; ++i) {
    auto s = std::uint64_t{mf[static_cast<std::size_t>(i)]} + mg[static_cast<std::size_t>(i)];
    if (truncate) s = std::min<std::uint64_t>(s, q - 1);
    if (s > 0xFFFF) throw RangeError("exponent overflow in polynomial product");
    top[static_cast<std::size_t>(i)] = s;
  }

  Layout L;
  L.nvars = n;
  L.slab = !truncate && n >= 2 && f.is_homogeneous() && g.is_homogeneous();
  L.dims = L.slab ? n - 1 : n;
  if (L.slab) L.slab_degree = f.leading().m.deg + g.leading().m.deg;
  bool dense = true;
  for (int i = 0; i < L.dims; ++i) {
    auto ext = top[static_cast<std::size_t>(i)] + 1;
    L.extent[static_cast<std::size_t>(i)] = ext;
    L.stride[static_cast<std::size_t>(i)] = L.size;
    if (L.size > kDenseLimit / ext) {
      dense = false;
      break;
    }
    L.size *= ext;
  }
  const std::uint64_t pairs = std::uint64_t{f.size()} * g.size();
  if (dense && L.size > 16 * pairs + 4096) dense = false;

  auto fits = [&](const Monomial& a, const Monomial& b) {
    for (int i = 0; i < n; ++i) {
      if (std::uint64_t{a[i]} + b[i] >= q) return false;
    }
    return true;
  };

  const bool squaring = &f == &g && !truncate;
  const std::size_t per_slot = std::min(f.size(), g.size());
  const bool lazy = lazy_ok(mod, per_slot, squaring ? 2 : 1);

  std::vector<Term> out;
  if (dense) {
    std::vector<std::uint64_t> acc(L.size, 0);
    std::vector<std::uint64_t> gi(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) gi[j] = index_of(L, g.terms()[j].m);
    auto gt = g.terms();
    if (squaring) {
      for (std::size_t i = 0; i < gt.size(); ++i) {
        const std::uint64_t ci = gt[i].c;
        const std::uint64_t base = gi[i];
        auto& diag = acc[2 * base];
        diag = lazy ? diag + ci * ci : (diag + ci * ci) % mod;
        const std::uint64_t c2 = 2 * ci;
        for (std::size_t j = i + 1; j < gt.size(); ++j) {
          auto& slot = acc[base + gi[j]];
          slot = lazy ? slot + c2 * gt[j].c : (slot + c2 % mod * gt[j].c) % mod;
        }
      }
    } else {
      for (const auto& a : f.terms()) {
        const std::uint64_t base = index_of(L, a.m);
        const std::uint64_t ca = a.c;
        if (truncate) {
          for (std::size_t j = 0; j < gt.size(); ++j) {
            if (!fits(a.m, gt[j].m)) continue;
            auto& slot = acc[base + gi[j]];
            slot = lazy ? slot + ca * gt[j].c : (slot + ca * gt[j].c) % mod;
          }
        } else if (lazy) {
          for (std::size_t j = 0; j < gt.size(); ++j) acc[base + gi[j]] += ca * gt[j].c;
        } else {
          for (std::size_t j = 0; j < gt.size(); ++j) {
            auto& slot = acc[base + gi[j]];
            slot = (slot + ca * gt[j].c) % mod;
          }
        }
      }
    }
    for (std::uint64_t idx = 0; idx < L.size; ++idx) {
      if (!acc[idx]) continue;
      auto c = static_cast<std::uint32_t>(acc[idx] % mod);
      if (c) out.push_back({decode(L, idx), c});
    }
  } else {
    std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
    acc.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(pairs, 1u << 22)));
    for (const auto& a : f.terms()) {
      for (const auto& b : g.terms()) {
        if (truncate && !fits(a.m, b.m)) continue;
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.m.exp[i] + b.m.exp[i]);
        m.deg = a.m.deg + b.m.deg;
        auto& slot = acc[m];
        slot = lazy ? slot + std::uint64_t{a.c} * b.c : (slot + std::uint64_t{a.c} * b.c) % mod;
      }
    }
    out.reserve(acc.size());
    for (const auto& [m, v] : acc) {
      auto c = static_cast<std::uint32_t>(v % mod);
      if (c) out.push_back({m, c});
    }
  }
  return Polynomial::from_sorted(ring, sorted_terms(std::move(out)));
}

Polynomial small_power(const Polynomial& f, std::uint64_t n, std::uint64_t q) {
  if (n == 0) return Polynomial::constant(f.ring(), 1);
  int top = 63;
  while (!((n >> top) & 1)) --top;
  Polynomial r = q ? truncate_bracket(f, q) : f;
  const Polynomial base = r;
  for (int b = top - 1; b >= 0; --b) {
    r = q ? multiply_impl(r, r, q) : multiply_impl(r, r, 0);
    if ((n >> b) & 1) r = multiply_impl(r, base, q);
  }
  return r;
}

void require_mod_p(const Polynomial& f, const char* what) {
  if (f.ring().kind() != CoeffRing::ModP) {
    throw ArgumentError(std::string(what) + " requires coefficients in F_p");
  }
}

unsigned log_p(std::uint64_t q, std::uint32_t p) {
  if (q == 0) throw ArgumentError("bracket power must be a positive power of p");
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) throw ArgumentError("bracket power must be a power of p");
  return e;
}

}  // namespace

Polynomial multiply(const Polynomial& f, const Polynomial& g) { return multiply_impl(f, g, 0); }

Polynomial multiply_mod_bracket(const Polynomial& f, const Polynomial& g, std::uint64_t q) {
  if (q == 0) throw ArgumentError("bracket power must be positive");
  return multiply_impl(f, g, q);
}

Polynomial frobenius_power(const Polynomial& f, unsigned e) {
  require_mod_p(f, "frobenius_power");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= f.ring().p();
    if (q > 0xFFFF) {
      if (f.total_degree() == 0) return f;
      throw RangeError("Frobenius power exponent overflow");
    }
  }
  std::vector<Term> out(f.terms().begin(), f.terms().end());
  for (auto& t : out) {
    for (int i = 0; i < f.ring().nvars(); ++i) {
      std::uint64_t v = t.m[i] * q;
      if (v > 0xFFFF) throw RangeError("Frobenius power exponent overflow");
      t.m.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(v);
    }
    t.m.deg = static_cast<std::uint32_t>(t.m.deg * q);
  }
  return Polynomial::from_sorted(f.ring(), std::move(out));
}

Polynomial power(const Polynomial& f, std::uint64_t n) {
  if (f.ring().kind() != CoeffRing::ModP) return small_power(f, n, 0);
  const std::uint32_t p = f.ring().p();
  Polynomial result = Polynomial::constant(f.ring(), 1);
  unsigned digit_pos = 0;
  while (n) {
    std::uint64_t d = n % p;
    if (d) result = multiply(result, frobenius_power(small_power(f, d, 0), digit_pos));
    n /= p;
    ++digit_pos;
  }
  return result;
}

Polynomial pow_mod_bracket(const Polynomial& f, std::uint64_t n, std::uint64_t q) {
  require_mod_p(f, "pow_mod_bracket");
  const std::uint32_t p = f.ring().p();
  log_p(q, p);
  if (q == 1) {
    return Polynomial::constant(f.ring(), pow_mod(f.constant_term(), n, p));
  }
  if (n == 0) return Polynomial::constant(f.ring(), 1);
  const std::uint64_t high = n / p;
  const std::uint64_t low = n % p;
  Polynomial acc = Polynomial::constant(f.ring(), 1);
  if (high) acc = frobenius_power(pow_mod_bracket(f, high, q / p), 1);
  if (acc.is_zero()) return acc;
  if (low) acc = multiply_mod_bracket(acc, small_power(f, low, q), q);
  return acc;
}

}  // namespace qfp
