#include "qfp/frob.hpp"

#include "qfp/classify.hpp"
#include "qfp/error.hpp"

namespace qfp {

namespace {

std::uint64_t checked_q(std::uint32_t p, unsigned e) {
  if (e == 0) throw ArgumentError("e must be positive");
  if (e > max_bracket_exponent(p)) throw RangeError("p^e exceeds the supported exponent range");
  std::uint64_t q = 1;
  for (unsigned k = 0; k < e; ++k) q *= p;
  return q;
}

void require_in_m(const Polynomial& f) {
  if (f.ring().kind() != CoeffRing::ModP) throw ArgumentError("expected a polynomial over F_p");
  if (f.is_zero()) throw ArgumentError("f must be nonzero");
  if (f.constant_term() != 0) throw ArgumentError("f must vanish at the origin (zero constant term)");
}

// Largest N >= start with f^N not in m^[q], given f^start not in m^[q].
std::uint64_t search_up(const Polynomial& f, std::uint64_t start, std::uint64_t q) {
  Polynomial cur = pow_mod_bracket(f, start, q);
  if (cur.is_zero()) throw InvariantError("nu search started inside m^[q]");
  std::uint64_t n = start;
  for (;;) {
    Polynomial next = multiply_mod_bracket(cur, f, q);
    if (next.is_zero()) return n;
    cur = std::move(next);
    ++n;
    if (n >= q) throw InvariantError("nu exceeded q - 1");
  }
}

}  // namespace

unsigned max_bracket_exponent(std::uint32_t p) noexcept {
  unsigned e = 0;
  std::uint64_t q = 1;
  while (q * p <= 65536) {
    q *= p;
    ++e;
  }
  return e;
}

NuTable nu_table(const Polynomial& f, unsigned e_max) {
  require_in_m(f);
  if (e_max == 0) throw ArgumentError("e must be positive");
  NuTable t;
  t.p = f.ring().p();
  std::uint64_t prev = 0;
  for (unsigned e = 1; e <= e_max; ++e) {
    std::uint64_t q = checked_q(t.p, e);
    std::uint64_t v = search_up(f, e == 1 ? 0 : prev * t.p, q);
    t.nu.push_back(v);
    prev = v;
  }
  return t;
}

std::uint64_t nu(const Polynomial& f, unsigned e) { return nu_table(f, e).at(e); }

bool fedder_f_pure(const Polynomial& f) {
  require_in_m(f);
  const std::uint32_t p = f.ring().p();
  return !pow_mod_bracket(f, p - 1, p).is_zero();
}

const char* to_string(FptMethod m) noexcept {
  switch (m) {
    case FptMethod::Bounds: return "bounds";
    case FptMethod::FPure: return "f-pure";
    case FptMethod::DenominatorP: return "denominator-p";
    case FptMethod::Unresolved: return "unresolved";
  }
  return "?";
}

FptHypotheses fpt_hypotheses(const Polynomial& f) {
  FptHypotheses h;
  const std::uint32_t p = f.ring().p();
  const int n = f.ring().nvars();
  h.homogeneous = f.is_homogeneous();
  h.p_odd = p != 2;
  h.p_gt_n_minus_2 = static_cast<int>(p) > n - 2;
  h.not_general_type = static_cast<std::uint32_t>(n) >= f.total_degree();
  h.isolated_singularity = isolated_singularity(f);
  return h;
}

FptReport fpt_bounds(const Polynomial& f, unsigned e_max) {
  FptReport r;
  r.table = nu_table(f, e_max);
  const std::int64_t p = r.table.p;
  std::int64_t q = 1;
  for (unsigned e = 1; e <= e_max; ++e) {
    q *= p;
    Fraction lo(static_cast<std::int64_t>(r.table.at(e)), q);
    Fraction hi(static_cast<std::int64_t>(r.table.at(e)) + 1, q);
    // successive intervals nest
    if (e > 1 && (lo < r.lower || hi > r.upper)) throw InvariantError("fpt intervals failed to nest");
    r.lower = lo;
    r.upper = hi;
  }
  r.f_pure = r.table.at(1) + 1 == static_cast<std::uint64_t>(p);
  r.method = FptMethod::Bounds;
  return r;
}

FptReport fpt_resolve(const Polynomial& f) {
  require_in_m(f);
  const std::uint32_t p = f.ring().p();
  const unsigned e_max = std::min(2u, max_bracket_exponent(p));
  FptReport r = fpt_bounds(f, 1);
  r.flags = fpt_hypotheses(f);
  if (r.f_pure) {
    r.exact = Fraction(1);
    r.lower = r.upper = Fraction(1);
    r.method = FptMethod::FPure;
    r.note = "F-pure, so nu_f(p^e) = p^e - 1 for every e";
    return r;
  }
  FptReport b = fpt_bounds(f, e_max);
  b.flags = r.flags;
  if (!b.flags.required()) {
    b.method = FptMethod::Bounds;
    b.note = "hypotheses for the denominator-p form do not hold; bounds only";
    return b;
  }
  if (e_max < 2) {
    b.method = FptMethod::Unresolved;
    b.note = "p^2 exceeds the supported exponent range";
    return b;
  }
  const std::uint64_t h = p - 1 - b.table.at(1);
  const std::uint64_t want = std::uint64_t{p} * p - h * p - 1;
  if (b.table.at(2) == want) {
    b.exact = Fraction(static_cast<std::int64_t>(p - h), p);
    b.method = FptMethod::DenominatorP;
    b.note = "nu_f(p^2) = p^2 - h p - 1 with h = " + std::to_string(h);
  } else {
    b.method = FptMethod::Unresolved;
    b.note = "nu_f(p^2) = " + std::to_string(b.table.at(2)) + " differs from p^2 - h p - 1 = " + std::to_string(want);
  }
  return b;
}

}  // namespace qfp
