#include "qfp/qfp.hpp"

#include <algorithm>

#include "qfp/error.hpp"

namespace qfp {

namespace {

void require_mod_p(const Polynomial& a, const char* what) {
  if (a.ring().kind() != CoeffRing::ModP) throw ArgumentError(std::string(what) + " expects an F_p polynomial");
}

Monomial scale_exponents(const Monomial& m, std::uint32_t p) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    std::uint64_t v = std::uint64_t{m[i]} * p;
    if (v > 0xFFFF) throw RangeError("exponent overflow in Frobenius spread");
    r.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(v);
  }
  r.deg = m.deg * p;
  return r;
}

// Divides every Z/p^2 coefficient by p, checking divisibility.
Polynomial divide_by_p(const Ring& ring, const std::vector<Term>& terms, std::uint32_t p) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.c % p != 0) throw InvariantError("Delta_1: coefficient not divisible by p");
    if (t.c / p) out.push_back({t.m, t.c / p});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

}  // namespace

Polynomial delta1(const Polynomial& a) {
  require_mod_p(a, "delta1");
  const Ring& ring = a.ring();
  const std::uint32_t p = ring.p();
  const std::uint32_t p2 = p * p;
  Polynomial lifted = lift(a);
  Polynomial full = power(lifted, p);
  std::vector<Term> sub;
  for (const auto& t : a.terms()) sub.push_back({scale_exponents(t.m, p), pow_mod(t.c, p, p2)});
  Polynomial diff = full - Polynomial::from_terms(full.ring(), std::move(sub));
  return divide_by_p(ring, {diff.terms().begin(), diff.terms().end()}, p);
}

Polynomial delta1_multinomial(const Polynomial& a) {
  require_mod_p(a, "delta1_multinomial");
  const Ring& ring = a.ring();
  const std::uint32_t p = ring.p();
  const auto terms = a.terms();
  const std::size_t m = terms.size();
  std::vector<std::uint64_t> alpha(m, 0);
  std::vector<Term> out;
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == m) {
      if (left > p - 1) return;
      alpha[i] = left;
      if (std::count_if(alpha.begin(), alpha.end(), [](std::uint64_t x) { return x > 0; }) < 2) return;
      std::uint32_t c = delta_coefficient(alpha, ring.prime()).value();
      Monomial mono;
      for (std::size_t k = 0; k < m; ++k) {
        for (std::uint64_t r = 0; r < alpha[k]; ++r) mono = mul(mono, terms[k].m);
        c = mul_mod(c, pow_mod(terms[k].c, alpha[k], p), p);
      }
      if (c) out.push_back({mono, c});
      return;
    }
    for (std::uint32_t k = 0; k <= std::min(left, p - 1); ++k) {
      alpha[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (m >= 2) rec(rec, 0, p);
  return Polynomial::from_terms(ring, std::move(out));
}

Polynomial delta1_power(const Polynomial& f, std::uint64_t n) {
  require_mod_p(f, "delta1_power");
  const Ring& ring = f.ring();
  if (n == 0 || f.is_zero()) return Polynomial(ring);
  const std::uint32_t p = ring.p();
  const std::uint32_t p2 = p * p;
  const Ring r2 = ring.with_kind(CoeffRing::ModP2);

  // A~ = sum (a_i^p mod p^2) M_i, so that A = A~(x^p).
  std::vector<Term> at;
  for (const auto& t : f.terms()) at.push_back({t.m, pow_mod(t.c, p, p2)});
  Polynomial b = power(Polynomial::from_terms(r2, std::move(at)), n);
  std::vector<Term> first;
  for (const auto& t : b.terms()) {
    std::uint32_t gc = t.c % p;  // coefficient of f^N at this monomial
    std::uint32_t diff = sub_mod(t.c, pow_mod(gc, p, p2), p2);
    if (diff % p != 0) throw InvariantError("delta1_power: coefficient not divisible by p");
    if (diff / p) first.push_back({scale_exponents(t.m, p), diff / p});
  }
  Polynomial result = Polynomial::from_terms(ring, std::move(first));
  const std::uint32_t nmod = static_cast<std::uint32_t>(n % p);
  if (nmod) {
    Polynomial second = multiply(delta1(f), frobenius_power(power(f, n - 1), 1));
    result = result + second.scaled(nmod);
  }
  return result;
}

Polynomial u_map(const Polynomial& b) {
  require_mod_p(b, "u_map");
  const std::uint32_t p = b.ring().p();
  const int n = b.ring().nvars();
  std::vector<Term> out;
  for (const auto& t : b.terms()) {
    Monomial w;
    bool keep = true;
    for (int i = 0; i < n && keep; ++i) {
      std::uint32_t v = t.m[i];
      if (v % p != p - 1) {
        keep = false;
        break;
      }
      w.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((v - (p - 1)) / p);
      w.deg += w.exp[static_cast<std::size_t>(i)];
    }
    if (keep) out.push_back({w, t.c});
  }
  return Polynomial::from_terms(b.ring(), std::move(out));
}

Delta1Context::Delta1Context(Polynomial f) : f_(std::move(f)), g_(f_.ring()), delta_(f_.ring()) {
  require_mod_p(f_, "Delta1Context");
  const std::uint32_t p = f_.ring().p();
  g_ = power(f_, p - 1);
  delta_ = delta1_power(f_, p - 1);
}

Polynomial theta(const Delta1Context& ctx, const Polynomial& a) { return u_map(multiply(ctx.delta(), a)); }

namespace {

// Splits the terms of b by the unique alpha in [0,p-1]^n with x^alpha b_term
// having every exponent = p-1 mod p; bucket alpha receives u(x^alpha term).
void distribute(const Polynomial& b, std::uint32_t p, int n, std::vector<std::vector<Term>>& buckets) {
  for (const auto& t : b.terms()) {
    std::size_t idx = 0, stride = 1;
    Monomial w;
    for (int i = 0; i < n; ++i) {
      std::uint32_t v = t.m[i];
      std::uint32_t alpha = (p - 1 - v % p) % p;
      idx += alpha * stride;
      stride *= p;
      w.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((v + alpha - (p - 1)) / p);
      w.deg += w.exp[static_cast<std::size_t>(i)];
    }
    buckets[idx].push_back({w, t.c});
  }
}

}  // namespace

Ideal next_ideal(const Delta1Context& ctx, const Ideal& ideal) {
  const Ring& ring = ctx.f().ring();
  const std::uint32_t p = ctx.p();
  const int n = ctx.nvars();
  std::size_t boxes = 1;
  for (int i = 0; i < n; ++i) boxes *= p;

  std::vector<Polynomial> out_gens{ctx.g()};
  if (ctx.delta().is_zero()) return Ideal(ring, out_gens);

  std::vector<Polynomial> hs, ths;
  for (const auto& gi : ideal.basis()) {
    std::vector<std::vector<Term>> hb(boxes), tb(boxes);
    distribute(gi, p, n, hb);
    distribute(multiply(ctx.delta(), gi), p, n, tb);
    for (std::size_t a = 0; a < boxes; ++a) {
      Polynomial h = Polynomial::from_terms(ring, std::move(hb[a]));
      Polynomial th = Polynomial::from_terms(ring, std::move(tb[a]));
      if (th.is_zero()) continue;  // contributes nothing to the image
      if (h.is_zero()) {
        out_gens.push_back(std::move(th));  // unit syzygy
      } else {
        hs.push_back(std::move(h));
        ths.push_back(std::move(th));
      }
    }
  }
  if (!hs.empty()) {
    for (const auto& sigma : syzygy_generators(hs)) {
      Polynomial acc(ring);
      for (std::size_t j = 0; j < sigma.size(); ++j) {
        if (!sigma[j].is_zero()) acc = acc + multiply(sigma[j], ths[j]);
      }
      if (!acc.is_zero()) out_gens.push_back(std::move(acc));
    }
  }
  Ideal next(ring, std::move(out_gens));
  return Ideal(ring, next.basis());
}

const char* to_string(Certificate c) noexcept {
  switch (c) {
    case Certificate::None: return "none";
    case Certificate::CertA: return "CertA";
    case Certificate::CertB: return "CertB";
    case Certificate::Stabilized: return "Stabilized";
  }
  return "?";
}

Certificate not_qfp_certificate(const Polynomial& f) {
  require_mod_p(f, "not_qfp_certificate");
  if (f.is_zero() || f.constant_term() != 0) throw ArgumentError("f must be a nonzero polynomial vanishing at the origin");
  const std::uint32_t p = f.ring().p();
  if (p >= 3 && pow_mod_bracket(f, p - 2, p).is_zero()) return Certificate::CertA;
  if (!pow_mod_bracket(f, p - 1, p).is_zero()) return Certificate::None;
  const std::uint64_t q = std::uint64_t{p} * p;
  if (q > 65536) return Certificate::None;  // bracket exponent out of range
  Polynomial lhs = pow_mod_bracket(f, std::uint64_t{p + 1} * (p - 2), q);
  if (lhs.is_zero() || multiply_mod_bracket(lhs, delta1(f), q).is_zero()) return Certificate::CertB;
  return Certificate::None;
}

const char* to_string(HeightOutcome o) noexcept {
  switch (o) {
    case HeightOutcome::Finite: return "finite";
    case HeightOutcome::Infinite: return "infinite";
    case HeightOutcome::UnknownBeyond: return "unknown";
  }
  return "?";
}

const char* to_string(HeightMethod m) noexcept {
  switch (m) {
    case HeightMethod::Auto: return "auto";
    case HeightMethod::Exact: return "exact";
    case HeightMethod::Graded: return "graded";
  }
  return "?";
}

std::optional<HeightMethod> parse_method(std::string_view s) noexcept {
  if (s == "auto") return HeightMethod::Auto;
  if (s == "exact") return HeightMethod::Exact;
  if (s == "graded") return HeightMethod::Graded;
  return std::nullopt;
}

std::string HeightResult::label() const {
  switch (outcome) {
    case HeightOutcome::Finite: return std::to_string(height);
    case HeightOutcome::Infinite: return "infinity";
    case HeightOutcome::UnknownBeyond: return ">" + std::to_string(examined);
  }
  return "?";
}

HeightResult qfp_height_exact(const Delta1Context& ctx, const HeightOptions& opts) {
  HeightResult r;
  r.method = HeightMethod::Exact;
  const Ring& ring = ctx.f().ring();
  const std::uint32_t p = ctx.p();
  Ideal cur(ring, {ctx.g()});
  for (unsigned m = 1; m <= opts.cutoff; ++m) {
    const auto& basis = cur.basis();
    std::uint32_t maxdeg = 0;
    for (const auto& b : basis) maxdeg = std::max(maxdeg, b.total_degree());
    r.trace.push_back({m, basis.size(), maxdeg});
    if (!contained_in_monomial_ideal(Ideal(ring, basis), p)) {
      r.outcome = HeightOutcome::Finite;
      r.height = m;
      r.examined = m;
      return r;
    }
    r.examined = m;
    if (m == opts.cutoff) break;
    Ideal next = next_ideal(ctx, cur);
    if (ideal_equal(next, cur)) {
      r.outcome = HeightOutcome::Infinite;
      r.certificate = Certificate::Stabilized;
      r.stabilized_at = m;
      r.examined = m + 1;
      return r;
    }
    cur = next;
  }
  r.outcome = HeightOutcome::UnknownBeyond;
  return r;
}

HeightResult qfp_height(const Polynomial& f, const HeightOptions& opts) {
  require_mod_p(f, "qfp_height");
  if (f.is_zero() || f.constant_term() != 0) throw ArgumentError("f must be a nonzero polynomial vanishing at the origin");
  if (opts.cutoff == 0) throw ArgumentError("cutoff must be positive");
  const std::uint32_t p = f.ring().p();

  std::optional<Grading> grading = find_grading(f);
  if (opts.method == HeightMethod::Graded && !grading) {
    throw ArgumentError("the graded method needs a quasi-homogeneous polynomial");
  }

  HeightResult r;
  r.method = opts.method;
  if (!pow_mod_bracket(f, p - 1, p).is_zero()) {
    r.outcome = HeightOutcome::Finite;
    r.height = 1;
    r.examined = 1;
    r.trace.push_back({1, 1, f.total_degree() * (p - 1)});
    r.note = "Fedder: f^(p-1) is not in m^[p]";
    return r;
  }
  if (opts.certificates) {
    Certificate c = not_qfp_certificate(f);
    if (c != Certificate::None) {
      r.outcome = HeightOutcome::Infinite;
      r.certificate = c;
      r.note = c == Certificate::CertA ? "f^(p-2) lies in m^[p]" : "f^((p+1)(p-2)) Delta_1(f) lies in m^[p^2]";
      return r;
    }
  }

  Delta1Context ctx(f);
  std::string caveat;
  if (!grading) caveat = "not quasi-homogeneous: criterion applied at m = (x_1..x_n)";

  if (opts.method == HeightMethod::Exact || (opts.method == HeightMethod::Auto && !grading)) {
    r = qfp_height_exact(ctx, opts);
    r.note = caveat;
    return r;
  }
  r = qfp_height_graded(ctx, *grading, opts);
  if (opts.method == HeightMethod::Graded || r.outcome != HeightOutcome::UnknownBeyond) return r;

  std::uint64_t W = 0;
  for (auto w : grading->weights) W += w;
  std::uint64_t boxes = 1;
  for (int i = 0; i < f.ring().nvars() && boxes <= opts.exact_fallback_limit; ++i) boxes *= p;
  if (W > grading->degree && boxes <= opts.exact_fallback_limit) {
    HeightResult e = qfp_height_exact(ctx, opts);
    e.note = "graded window not self-contained; exact iteration used";
    if (!r.note.empty()) e.note += " (" + r.note + ")";
    return e;
  }
  return r;
}

}  // namespace qfp
