// Acceptance suite: one line per criterion, budgets pinned below.
//
//   qfp_acceptance           fast tier (criterion 10 and the extended K3 check are skipped)
//   qfp_acceptance --full    everything
//
// Exit status is 0 only when every criterion that ran passed.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../unit/k3.hpp"
#include "qfp/classify.hpp"
#include "qfp/frob.hpp"
#include "qfp/qfp.hpp"
#include "qfp/record.hpp"
#include "qfp/witt.hpp"

using namespace qfp;

namespace {

struct Tally {
  bool ok = true;
  std::ostringstream detail;
  int checked = 0;

  // Records a failure; the first few are kept for the report line.
  void expect(bool cond, const std::string& what) {
    ++checked;
    if (cond) return;
    if (ok) detail << "first failure: " << what;
    ok = false;
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  bool full_only;
  std::function<void(Tally&, bool full)> run;
};

Polynomial parse(const std::string& s, std::uint32_t p) { return parse_poly(s, Prime(p), infer_variables(s)); }
Polynomial parse_xy(const std::string& s, std::uint32_t p) { return parse_poly(s, Prime(p), {"x", "y"}); }

bool is_finite(const HeightResult& h, unsigned m) { return h.outcome == HeightOutcome::Finite && h.height == m; }

HeightOptions cutoff(unsigned c, bool certs = true) {
  HeightOptions o;
  o.cutoff = c;
  o.certificates = certs;
  return o;
}

// 1
void char2_table(Tally& v, bool) {
  for (unsigned n = 2; n <= 4; ++n) {
    for (unsigned d = 1; d <= 7; ++d) {
      const auto h = qfp_height(fermat_polynomial(n, d, 2), cutoff(3));
      const std::string at = "n=" + std::to_string(n) + " d=" + std::to_string(d) + " got " + h.label();
      if (d == 1) v.expect(is_finite(h, 1), at);
      else if (d == 3 && n >= 3) v.expect(is_finite(h, 2), at);
      else v.expect(h.outcome == HeightOutcome::Infinite, at);
    }
  }
}

// 2
void elliptic(Tally& v, bool) {
  const std::pair<std::uint32_t, unsigned> want[] = {{2, 2}, {5, 2}, {7, 1}};
  for (auto [p, m] : want) {
    const auto h = qfp_height(parse("x^3+y^3+z^3", p), cutoff(4));
    v.expect(is_finite(h, m), "F_" + std::to_string(p) + " height " + h.label());
  }
  const auto f = parse("x^3+y^3+z^3", 5);
  const auto t = nu_table(f, 2);
  v.expect(t.nu == std::vector<std::uint64_t>{3, 19}, "nu table over F_5");
  const auto r = fpt_resolve(f);
  v.expect(r.exact && *r.exact == Fraction(4, 5), "fpt over F_5: " + r.note);
}

// 3
void k3_trio(Tally& v, bool full) {
  for (int i = 0; i < 3; ++i) {
    const auto f = parse(testing::kK3[i], 7);
    const std::string tag = "K3 #" + std::to_string(i + 1);
    v.expect(nu(f, 1) == 5, tag + " nu(7)");
    const auto r = fpt_resolve(f);
    v.expect(r.exact && *r.exact == Fraction(6, 7), tag + " fpt " + r.note);
    if (full) {
      const auto h = qfp_height(f, cutoff(3));
      v.expect(h.outcome != HeightOutcome::Finite, tag + " height " + h.label());
    }
  }
  if (!full) v.detail << "extended height check skipped (fast tier)";
}

// Is the engine's answer compatible with the closed form?
bool consistent(const FermatClass& c, const HeightResult& h) {
  switch (c.outcome) {
    case FermatOutcome::Height1FPure: return is_finite(h, 1);
    case FermatOutcome::Height2: return is_finite(h, 2);
    case FermatOutcome::Infinite: return h.outcome == HeightOutcome::Infinite;
    case FermatOutcome::NotFPureCase1b:
      if (c.sub == FermatSubAnswer::Infinite) return h.outcome == HeightOutcome::Infinite;
      if (c.sub == FermatSubAnswer::Height2) return is_finite(h, 2);
      return !is_finite(h, 1);
    case FermatOutcome::OutOfScope: return true;
  }
  return false;
}

// 4
void fermat_grid(Tally& v, bool) {
  int open = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (unsigned n = 3; n <= 4; ++n) {
      for (unsigned d = 1; d <= 8; ++d) {
        const auto c = classify_fermat(n, d, p);
        if (c.outcome == FermatOutcome::NotFPureCase1b && c.sub == FermatSubAnswer::Unknown) ++open;
        for (bool certs : {true, false}) {
          const auto h = qfp_height(fermat_polynomial(n, d, p), cutoff(3, certs));
          v.expect(consistent(c, h), "p=" + std::to_string(p) + " n=" + std::to_string(n) + " d=" +
                                         std::to_string(d) + " class " + to_string(c.outcome) + " engine " +
                                         h.label());
        }
      }
    }
  }
  if (v.ok) v.detail << open << " open case-(1b) cells";
}

// 5
void numerics(Tally& v, bool) {
  v.expect(moduli_dimension(5, 4) == 46, "moduli dimension");
  const std::pair<std::uint32_t, std::uint64_t> want[] = {{2, 5}, {3, 15}, {5, 70}, {7, 210}};
  for (auto [p, w] : want) {
    v.expect(unlikely_intersection(5, 4, p).wics == w, "wics at p=" + std::to_string(p));
  }
}

// 6
void delta1_oracles(Tally& v, bool) {
  std::mt19937_64 rng(6006);
  const std::uint32_t primes[] = {2, 3, 5, 7};
  for (int k = 0; k < 500; ++k) {
    const std::uint32_t p = primes[k % 4];
    const int n = 1 + static_cast<int>(rng() % 3);
    Ring ring(Prime(p), n);
    const auto f = oracle::random_poly(rng, ring, 1 + static_cast<int>(rng() % 5), 6);
    const auto d = delta1(f);
    const std::string at = "sample " + std::to_string(k) + " f=" + f.to_string();
    v.expect(d == delta1_witt_oracle(f), at + " (Witt)");
    v.expect(d == delta1_multinomial(f), at + " (multinomial)");
    v.expect(d == oracle::integer_delta1(f), at + " (integers)");
  }
}

WittVector random_witt(std::mt19937_64& rng, const Ring& ring, std::size_t len) {
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < len; ++i) c.push_back(oracle::random_poly(rng, ring, 2, 2));
  return WittVector(ring, c);
}

void witt_identities(Tally& v, const WittVector& a, const WittVector& b, const std::string& at) {
  const std::uint32_t p = a.ring().p();
  const std::size_t len = a.length();
  auto ga = a.ghost(), gb = b.ghost();
  std::vector<IntPoly> sum, prod;
  for (std::size_t i = 0; i < len; ++i) {
    sum.push_back(ga[i] + gb[i]);
    prod.push_back(ga[i] * gb[i]);
  }
  v.expect(ghost_congruent(witt_add(a, b).ghost(), sum, p), at + " ghost of sum");
  v.expect(ghost_congruent(witt_mul(a, b).ghost(), prod, p), at + " ghost of product");
  const auto pa = witt_times_p(a);
  v.expect(witt_frobenius(verschiebung(a)) == pa, at + " FV = p");
  v.expect(verschiebung(witt_frobenius(a)) == pa, at + " VF = p");
  for (std::size_t m = 1; m < len; ++m) {
    v.expect(restriction(witt_add(a, b), m) == witt_add(restriction(a, m), restriction(b, m)), at + " R(a+b)");
    v.expect(restriction(witt_mul(a, b), m) == witt_mul(restriction(a, m), restriction(b, m)), at + " R(ab)");
  }
}

// 7
void witt_suite(Tally& v, bool) {
  Ring f3(Prime(3), 1);
  std::vector<WittVector> all;
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) {
      all.emplace_back(f3, std::vector<Polynomial>{Polynomial::constant(f3, a), Polynomial::constant(f3, b)});
    }
  }
  for (const auto& a : all) {
    for (const auto& b : all) witt_identities(v, a, b, "W_2(F_3) constants");
  }
  std::mt19937_64 rng(7007);
  const std::uint32_t primes[] = {2, 3, 5};
  for (int k = 0; k < 200; ++k) {
    const std::uint32_t p = primes[k % 3];
    Ring ring(Prime(p), 2);
    const std::size_t len = p == 5 ? 2 : 3;
    witt_identities(v, random_witt(rng, ring, len), random_witt(rng, ring, len), "sample " + std::to_string(k));
  }
}

// 8
void main_theorem(Tally& v, bool) {
  int finite = 0, above_one = 0, drawn = 0;
  const std::uint32_t primes[] = {5, 7};
  const unsigned degrees[] = {2, 3, 4};
  for (std::uint64_t index = 0; index < 200; ++index) {
    const std::uint32_t p = primes[index % 2];
    const unsigned d = degrees[(index / 2) % 3];
    Polynomial f = draw_form(p, 3, d, 8008, index, 0);
    for (std::uint64_t attempt = 1; f.is_zero() || !isolated_singularity(f); ++attempt) {
      f = draw_form(p, 3, d, 8008, index, attempt);
    }
    ++drawn;
    const auto r = verify_main_theorem(f, 3);
    const std::string at = "F_" + std::to_string(p) + " f=" + f.to_string();
    v.expect(r.hypotheses(), at + " hypotheses");
    if (r.height.outcome != HeightOutcome::Finite) continue;
    ++finite;
    v.expect(r.nu_p + 2 >= p, at + " nu_f(p) = " + std::to_string(r.nu_p));
    if (r.height.height > 1) {
      ++above_one;
      // bounds only would leave the claim unchecked, so it counts against us
      v.expect(r.fpt.exact && *r.fpt.exact == Fraction(p - 1, p), at + " fpt " + r.fpt.note);
    }
  }
  if (v.ok) v.detail << drawn << " forms, " << finite << " finite, " << above_one << " with height in (1,3]";
}

// 9
void char2_trace(Tally& v, bool) {
  const auto f = parse_xy("x^3+y^3", 2);
  const Ring& R = f.ring();
  Delta1Context ctx(f);
  const auto& g = ctx.g();
  // alpha in [0,1]^2, first variable fastest
  const std::vector<std::vector<std::uint32_t>> alphas = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  std::vector<Polynomial> h;
  for (const auto& a : alphas) h.push_back(u_map(g.mul_term(make_monomial(a), 1)));
  const std::vector<Polynomial> want_h = {Polynomial(R), parse_xy("y", 2), parse_xy("x", 2), Polynomial(R)};
  v.expect(h == want_h, "h-vector");

  const auto syz = syzygy_generators(h);
  const std::vector<SyzygyVector> want_syz = {
      {parse_xy("1", 2), Polynomial(R), Polynomial(R), Polynomial(R)},
      {Polynomial(R), Polynomial(R), Polynomial(R), parse_xy("1", 2)},
      {Polynomial(R), parse_xy("x", 2), parse_xy("y", 2), Polynomial(R)},
  };
  v.expect(syz.size() == want_syz.size(), "syzygy count " + std::to_string(syz.size()));
  for (const auto& w : want_syz) v.expect(std::find(syz.begin(), syz.end(), w) != syz.end(), "syzygy set");

  // b_sigma = sum c^p x^alpha g; over F_2 c^p is c(x)^2 = frobenius_power(c, 1)
  std::vector<Polynomial> images;
  for (const auto& s : want_syz) {
    Polynomial b(R);
    for (std::size_t j = 0; j < 4; ++j) b = b + multiply(frobenius_power(s[j], 1), g.mul_term(make_monomial(alphas[j]), 1));
    images.push_back(theta(ctx, b));
  }
  v.expect(images[0].is_zero() && images[1].is_zero(), "theta of the unit syzygies");
  v.expect(images[2] == parse_xy("x^4*y + x*y^4", 2), "theta image " + images[2].to_string());

  const Ideal I1(R, {g});
  const Ideal I2 = next_ideal(ctx, I1);
  v.expect(ideal_equal(I1, I2), "I_2 = I_1");
  v.expect(contained_in_monomial_ideal(I1, 2), "I_1 inside m^[2]");
  const auto r = qfp_height(f, cutoff(3, false));
  v.expect(r.outcome == HeightOutcome::Infinite && r.certificate == Certificate::Stabilized,
           "height " + r.label() + " via " + to_string(r.certificate));
}

// Height of x_1^4+...+x_5^4 over F_7 is 2 iff some b in (g) with u(b) = 0 has
// theta(b) outside m^[7]. In degree 30 every b is g x^beta with beta of degree 6;
// stack u(g x^beta) | theta(g x^beta) mod m^[7] and compare ranks.
bool fermat7_oracle(std::string& why) {
  const auto f = fermat_polynomial(5, 4, 7);
  const auto g = power(f, 6);
  const auto delta = delta1(g);  // plain lift, not the power shortcut
  const auto dg = multiply_mod_bracket(delta, g, 49);
  const auto betas = oracle::monomials_of_degree(5, 6);
  std::map<Monomial, std::size_t, oracle::MonoLess> ucol, tcol;
  std::vector<Polynomial> us, ts;
  for (const auto& b : betas) {
    us.push_back(u_map(g.mul_term(b, 1)));
    ts.push_back(truncate_bracket(u_map(truncate_bracket(dg.mul_term(b, 1), 49)), 7));
    for (const auto& t : us.back().terms()) ucol.emplace(t.m, ucol.size());
    for (const auto& t : ts.back().terms()) tcol.emplace(t.m, tcol.size());
  }
  const std::size_t nu_cols = ucol.size();
  std::vector<std::vector<std::uint64_t>> U, UT;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    std::vector<std::uint64_t> row(nu_cols + tcol.size(), 0);
    for (const auto& t : us[i].terms()) row[ucol[t.m]] = t.c;
    U.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(nu_cols));
    for (const auto& t : ts[i].terms()) row[nu_cols + tcol[t.m]] = t.c;
    UT.push_back(std::move(row));
  }
  const auto ru = nu_cols ? oracle::rank_mod_p(U, 7) : 0;
  const auto rut = oracle::rank_mod_p(UT, 7);
  why = "rank U = " + std::to_string(ru) + ", rank [U|T] = " + std::to_string(rut);
  return rut > ru;
}

// 10
void fermat7(Tally& v, bool) {
  const auto f = fermat_polynomial(5, 4, 7);
  v.expect(!fedder_f_pure(f), "not F-pure");
  const auto h = qfp_height(f, cutoff(3));
  v.expect(is_finite(h, 2), "engine height " + h.label());
  std::string why;
  const bool escape = fermat7_oracle(why);
  v.expect(escape, "rank oracle: " + why);
  if (v.ok) v.detail << "engine " << to_string(h.method) << ", oracle " << why;
}

// Not a criterion: the Fermat fpt lemma's bound nu(p^e) >= p^e - 2p^(e-1) + 1 for
// d = n - 1, n = (p-2)/a. Claimed only for e large, so it is reported, not asserted.
void fermat_nu_bound_report() {
  struct Case {
    std::uint32_t p;
    unsigned n;
    unsigned emax;  // the next e is out of reach
  };
  for (const Case c : {Case{5, 3, 3}, Case{7, 5, 2}, Case{11, 3, 3}, Case{17, 3, 2}}) {
    const auto f = fermat_polynomial(c.n, c.n - 1, c.p);
    const auto t = nu_table(f, c.emax);
    std::cout << "  note  fermat nu bound p=" << c.p << " n=" << c.n << " d=" << c.n - 1 << ":";
    std::uint64_t q = 1;
    unsigned from = 0;
    for (unsigned e = 1; e <= c.emax; ++e) {
      const std::uint64_t prev = q;
      q *= c.p;
      const std::uint64_t bound = q - 2 * prev + 1;
      const bool holds = t.nu[e - 1] >= bound;
      if (!holds) from = 0;
      else if (!from) from = e;
      std::cout << " e=" << e << " nu=" << t.nu[e - 1] << (holds ? " >= " : " < ") << bound;
    }
    if (from) std::cout << "  (holds from e=" << from << " on the tested range)";
    else std::cout << "  (fails at e=" << c.emax << ")";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool full = false;
#ifdef QFP_FULL_TIER
  full = true;
#endif
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0) full = true;
    else if (std::strcmp(argv[i], "--fast") == 0) full = false;
    else {
      std::cerr << "usage: qfp_acceptance [--fast|--full]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "char-2 Fermat table", 10, false, char2_table},
      {2, "elliptic corpus", 30, false, elliptic},
      {3, "K3 trio over F_7", 60, false, k3_trio},
      {4, "Fermat classification grid", 300, false, fermat_grid},
      {5, "moduli and wics numerics", 1, false, numerics},
      {6, "Delta_1 triple oracle, 500 samples", 60, false, delta1_oracles},
      {7, "Witt identities", 30, false, witt_suite},
      {8, "main theorem on 200 sampled forms", 600, false, main_theorem},
      {9, "char-2 worked trace", 1, false, char2_trace},
      {10, "fermat7 height 2", 4 * 3600, true, fermat7},
  };

  std::cout << "tier: " << (full ? "full" : "fast") << "\n";
  int failed = 0;
  for (const auto& c : criteria) {
    if (c.full_only && !full) {
      std::cout << "SKIP  " << c.id << "  " << c.name << "  (full tier only; run with --full)\n";
      continue;
    }
    Tally v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v, full);
    } catch (const std::exception& e) {
      v.ok = false;
      if (!v.detail.str().empty()) v.detail << "; ";
      v.detail << "exception: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.budget_s;
    const bool pass = v.ok && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS  " : "FAIL  ") << c.id << "  " << c.name << "  " << v.checked << " checks, "
              << s << " s of " << c.budget_s << " s";
    if (!in_time) std::cout << "  OVER BUDGET";
    const auto d = v.detail.str();
    if (!d.empty()) std::cout << "  " << d;
    std::cout << "\n";
  }
  fermat_nu_bound_report();
  std::cout << (failed ? "acceptance: FAILED (" + std::to_string(failed) + ")" : std::string("acceptance: all passed"))
            << "\n";
  return failed ? 1 : 0;
}
