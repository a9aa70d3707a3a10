#include "qfp/classify.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "qfp/error.hpp"
#include "qfp/groebner.hpp"

namespace qfp {

using boost::multiprecision::cpp_int;

const char* to_string(FermatOutcome o) noexcept {
  switch (o) {
    case FermatOutcome::Height1FPure: return "HEIGHT_1_F_PURE";
    case FermatOutcome::Height2: return "HEIGHT_2";
    case FermatOutcome::Infinite: return "INFINITE";
    case FermatOutcome::NotFPureCase1b: return "NOT_F_PURE_CASE_1B";
    case FermatOutcome::OutOfScope: return "OUT_OF_THEOREM_SCOPE";
  }
  return "?";
}

const char* to_string(FermatSubAnswer s) noexcept {
  switch (s) {
    case FermatSubAnswer::None: return "none";
    case FermatSubAnswer::Unknown: return "UNKNOWN";
    case FermatSubAnswer::Height2: return "HEIGHT_2";
    case FermatSubAnswer::Infinite: return "INFINITE";
  }
  return "?";
}

FermatClass classify_fermat(unsigned n, unsigned d, std::uint32_t p) {
  FermatClass c;
  if (p == 2) {
    if (n < 2 || d == 0) {
      c.rule = "char 2 lemma needs n >= 2, d >= 1";
      return c;
    }
    if (d == 1) {
      c.outcome = FermatOutcome::Height1FPure;
      c.rule = "char 2: d = 1 is smooth, F-pure";
    } else if (d == 3 && n >= 3) {
      c.outcome = FermatOutcome::Height2;
      c.rule = "char 2: Fermat cubic with n >= 3 has height 2";
    } else {
      c.outcome = FermatOutcome::Infinite;
      c.rule = d == 3 ? "char 2: cubic in two variables is of general type"
                      : (d == 2 || d == 4 ? "char 2: non-reduced" : "char 2: Delta_1(f) in m^[4]");
    }
    return c;
  }
  if (n < 3 || d == 0) {
    c.rule = "odd p needs n >= 3; defer to the engine";
    return c;
  }
  if (d >= p) {
    c.outcome = FermatOutcome::Infinite;
    c.rule = "(2) d >= p: f^(p-2) in m^[p]";
    return c;
  }
  const std::uint32_t a = (p + d - 1) / d - 1;
  c.a = a;
  const std::uint64_t na = std::uint64_t{n} * a;
  const std::string where = " with a = " + std::to_string(a);
  if (na < p - 2) {
    c.outcome = FermatOutcome::Infinite;
    c.rule = "(1a) n < (p-2)/a" + where;
  } else if (na >= p - 1) {
    c.outcome = FermatOutcome::Height1FPure;
    c.rule = "(1c) n >= (p-1)/a" + where;
  } else {
    c.outcome = FermatOutcome::NotFPureCase1b;
    c.rule = "(1b) n = (p-2)/a" + where;
    c.necessary_condition = "quasi-F-pure only if d < n or d = n = 3";
    if (d == 3 && n == 3) {
      c.sub = FermatSubAnswer::Height2;
      c.rule += "; supersingular elliptic curve";
    } else if (d >= n) {
      c.sub = FermatSubAnswer::Infinite;
      c.rule += "; necessary condition fails";
    } else if (n == 5 && d == 4 && p == 7) {
      c.sub = FermatSubAnswer::Height2;
      c.rule += "; worked quartic threefold example";
    } else {
      c.sub = FermatSubAnswer::Unknown;
    }
  }
  return c;
}

Polynomial fermat_polynomial(unsigned n, unsigned d, std::uint32_t p) {
  if (n == 0 || n > static_cast<unsigned>(kMaxVars)) throw ArgumentError("number of variables out of range");
  Ring ring(Prime(p), static_cast<int>(n));
  std::vector<Term> terms;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::uint32_t> e(n, 0);
    e[i] = d;
    terms.push_back({make_monomial(e), 1});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

std::optional<Grading> quasi_homogeneous(const Polynomial& f) { return find_grading(f); }

SingularityReport isolated_singularity_detail(const Polynomial& f) {
  if (f.is_zero()) throw ArgumentError("f must be nonzero");
  const std::uint32_t p = f.ring().p();
  SingularityReport r;
  std::vector<Polynomial> gens;
  for (int i = 0; i < f.ring().nvars(); ++i) gens.push_back(derivative(f, i));
  auto grading = find_grading(f);
  if (grading && grading->degree % p != 0) {
    r.partials_only = true;
    r.ideal = "partials";
  } else {
    gens.push_back(f);
    r.ideal = "f+partials";
  }
  r.isolated = zero_dimensional(Ideal(f.ring(), std::move(gens)));
  return r;
}

bool isolated_singularity(const Polynomial& f) { return isolated_singularity_detail(f).isolated; }

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "FAIL";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

bool MainTheoremReport::passed() const noexcept {
  for (const auto& i : implications) {
    if (i.verdict == Verdict::Fail) return false;
  }
  return true;
}

MainTheoremReport verify_main_theorem(const Polynomial& f, unsigned cutoff, const HeightOptions& base) {
  MainTheoremReport r;
  const std::uint32_t p = f.ring().p();
  const int n = f.ring().nvars();
  r.quasi_homogeneous = find_grading(f).has_value();
  r.isolated = isolated_singularity(f);
  r.p_odd = p != 2;
  r.p_gt_n_minus_2 = static_cast<int>(p) > n - 2;

  HeightOptions opts = base;
  opts.cutoff = cutoff;
  r.height = qfp_height(f, opts);
  r.nu_p = nu(f, 1);
  r.fpt = fpt_resolve(f);

  const bool finite = r.height.outcome == HeightOutcome::Finite;
  Implication one{"finite height => nu_f(p) >= p-2", Verdict::Vacuous, ""};
  if (!r.hypotheses()) {
    one.detail = "hypotheses not met";
  } else if (!finite) {
    one.detail = "height " + r.height.label();
  } else {
    one.verdict = r.nu_p + 2 >= p ? Verdict::Pass : Verdict::Fail;
    one.detail = "nu_f(p) = " + std::to_string(r.nu_p);
  }
  r.implications.push_back(one);

  Implication two{"height in (1,inf) => fpt = 1 - 1/p", Verdict::Vacuous, ""};
  if (!r.hypotheses()) {
    two.detail = "hypotheses not met";
  } else if (!finite || r.height.height <= 1) {
    two.detail = "height " + r.height.label();
  } else if (!r.fpt.exact) {
    two.detail = "fpt_resolve gave bounds only: " + r.fpt.note;
  } else {
    const Fraction want(static_cast<std::int64_t>(p) - 1, p);
    two.verdict = *r.fpt.exact == want ? Verdict::Pass : Verdict::Fail;
    two.detail = "fpt = " + std::to_string(r.fpt.exact->numerator()) + "/" + std::to_string(r.fpt.exact->denominator());
  }
  r.implications.push_back(two);
  return r;
}

namespace {

cpp_int binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  cpp_int r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::uint64_t wics_count(unsigned n, std::uint64_t D, std::uint64_t k) {
  if (n == 0) return D == 0 ? 1 : 0;
  cpp_int total = 0;
  for (unsigned j = 0; j <= n; ++j) {
    const cpp_int shift = cpp_int(j) * k;
    if (shift > D) break;
    const std::int64_t rest = static_cast<std::int64_t>(D - static_cast<std::uint64_t>(shift));
    cpp_int term = binom(n, j) * binom(rest + n - 1, n - 1);
    total += (j % 2 ? -term : term);
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) throw RangeError("wics count exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

std::int64_t moduli_dimension(unsigned n, unsigned d) {
  if (n < 2 || d < 1) throw ArgumentError("moduli dimension needs n >= 2 and d >= 1");
  cpp_int v = binom(d + n - 1, n - 1) - cpp_int(n) * n + 1;
  if (v > std::numeric_limits<std::int64_t>::max()) throw RangeError("moduli dimension exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

ModuliReport unlikely_intersection(unsigned n, unsigned d, std::uint32_t p) {
  Prime checked(p);
  ModuliReport r;
  r.n = n;
  r.d = d;
  r.p = checked.value();
  r.dimension = moduli_dimension(n, d);
  r.wics = wics_count(n, std::uint64_t{d} * (p - 1), p);
  r.unlikely = r.dimension < 0 || static_cast<std::uint64_t>(r.dimension) < r.wics;
  return r;
}

}  // namespace qfp
