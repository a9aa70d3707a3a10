#include "support.hpp"

#include "../oracles.hpp"
#include "k3.hpp"
#include "qfp/classify.hpp"

using namespace qfp;
using testing::P;

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// direct enumeration of bounded compositions
std::uint64_t enumerate_wics(unsigned n, std::uint64_t D, std::uint64_t k) {
  if (n == 0) return D == 0;
  std::uint64_t total = 0;
  for (std::uint64_t a = 0; a < k && a <= D; ++a) total += enumerate_wics(n - 1, D - a, k);
  return total;
}

}  // namespace

TEST_CASE("classify_fermat examples") {
  auto a = classify_fermat(3, 3, 7);
  CHECK(a.outcome == FermatOutcome::Height1FPure);
  CHECK(a.a == 2u);
  auto b = classify_fermat(3, 4, 7);
  CHECK(b.outcome == FermatOutcome::Infinite);
  CHECK(b.a == 1u);
  auto c = classify_fermat(5, 4, 7);
  CHECK(c.outcome == FermatOutcome::NotFPureCase1b);
  CHECK(c.sub == FermatSubAnswer::Height2);
  CHECK_FALSE(c.necessary_condition.empty());

  CHECK(classify_fermat(3, 1, 2).outcome == FermatOutcome::Height1FPure);
  CHECK(classify_fermat(3, 3, 2).outcome == FermatOutcome::Height2);
  CHECK(classify_fermat(2, 3, 2).outcome == FermatOutcome::Infinite);
  CHECK(classify_fermat(4, 6, 2).outcome == FermatOutcome::Infinite);
  CHECK(classify_fermat(2, 3, 5).outcome == FermatOutcome::OutOfScope);
  CHECK(classify_fermat(3, 9, 7).outcome == FermatOutcome::Infinite);
  CHECK(classify_fermat(3, 3, 5).sub == FermatSubAnswer::Height2);
  CHECK(classify_fermat(3, 4, 5).sub == FermatSubAnswer::Infinite);
}

TEST_CASE("case (1) intervals partition [1, p-1]") {
  for (std::uint32_t p = 3; p <= 31; ++p) {
    if (!Prime::is_prime(p)) continue;
    for (std::uint32_t d = 1; d < p; ++d) {
      int hits = 0;
      std::uint32_t found = 0;
      for (std::uint32_t a = 1; a <= p; ++a) {
        if (ceil_div(p, a + 1) <= d && d < ceil_div(p, a)) {
          ++hits;
          found = a;
        }
      }
      CHECK(hits == 1);
      CHECK(found == ceil_div(p, d) - 1);
      CHECK(classify_fermat(3, d, p).a == found);
    }
  }
}

TEST_CASE("case (1b) is empty unless p = 2 mod n") {
  for (std::uint32_t p = 3; p <= 31; ++p) {
    if (!Prime::is_prime(p)) continue;
    for (unsigned n = 3; n <= 12; ++n) {
      if (p % n == 2) continue;
      for (unsigned d = 1; d < p; ++d) CHECK(classify_fermat(n, d, p).outcome != FermatOutcome::NotFPureCase1b);
    }
  }
}

TEST_CASE("quasi-homogeneity and isolated singularities") {
  auto g = quasi_homogeneous(P("x^3+y^3+z^3", 5, 3));
  REQUIRE(g);
  CHECK(g->weights == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(isolated_singularity(P("x^3+y^3+z^3", 5, 3)));
  auto s = isolated_singularity_detail(P("x^3+y^3+z^3", 5, 3));
  CHECK(s.partials_only);
  CHECK(s.ideal == "partials");

  CHECK(quasi_homogeneous(P("x^2*y", 5, 2)));
  CHECK_FALSE(isolated_singularity(P("x^2*y", 5, 2)));
  CHECK_FALSE(quasi_homogeneous(P("x^3+x", 5, 1)));

  // p divides the degree: f has to stay in the ideal
  auto t = isolated_singularity_detail(P("x^3+y^3+z^3", 3, 3));
  CHECK(t.ideal == "f+partials");
  CHECK_FALSE(t.isolated);
  // the first quartic, as printed, has a positive-dimensional singular locus
  // (cross-checked with an outside Groebner engine); the other two are smooth
  std::vector<std::string> v = {"x1", "x2", "x3", "x4"};
  CHECK_FALSE(isolated_singularity(parse_poly(testing::kK3[0], Prime(7), v)));
  CHECK(isolated_singularity(parse_poly(testing::kK3[1], Prime(7), v)));
  CHECK(isolated_singularity(parse_poly(testing::kK3[2], Prime(7), v)));
}

TEST_CASE("main theorem verifier") {
  auto e = verify_main_theorem(P("x^3+y^3+z^3", 5, 3), 3);
  CHECK(e.hypotheses());
  CHECK(e.height.outcome == HeightOutcome::Finite);
  CHECK(e.height.height == 2);
  REQUIRE(e.fpt.exact);
  CHECK(*e.fpt.exact == Fraction(4, 5));
  REQUIRE(e.implications.size() == 2);
  CHECK(e.implications[0].verdict == Verdict::Pass);
  CHECK(e.implications[1].verdict == Verdict::Pass);
  CHECK(e.passed());

  std::vector<std::string> v = {"x1", "x2", "x3", "x4"};
  auto k = verify_main_theorem(parse_poly(testing::kK3[1], Prime(7), v), 2);
  CHECK(k.height.outcome != HeightOutcome::Finite);
  REQUIRE(k.fpt.exact);
  CHECK(*k.fpt.exact == Fraction(6, 7));
  CHECK(k.implications[0].verdict == Verdict::Vacuous);
  CHECK(k.implications[1].verdict == Verdict::Vacuous);

  auto x = verify_main_theorem(P("x", 5, 1), 3);
  CHECK(x.height.height == 1);
  REQUIRE(x.fpt.exact);
  CHECK(*x.fpt.exact == Fraction(1));
  CHECK(x.implications[1].verdict == Verdict::Vacuous);
}

TEST_CASE("wics examples and properties") {
  CHECK(wics_count(5, 4, 2) == 5);
  CHECK(wics_count(5, 24, 7) == 210);
  CHECK(wics_count(1, 0, 1) == 1);
  CHECK(wics_count(5, 8, 3) == 15);
  CHECK(wics_count(5, 16, 5) == 70);
  for (unsigned n = 1; n <= 6; ++n) {
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
      for (std::uint64_t D = 0; D <= n * (p - 1); ++D) {
        CHECK(wics_count(n, D, p) == wics_count(n, n * (p - 1) - D, p));
        if (n <= 4) CHECK(wics_count(n, D, p) == enumerate_wics(n, D, p));
      }
    }
  }
}

TEST_CASE("moduli numerics") {
  CHECK(moduli_dimension(5, 4) == 46);
  auto a = unlikely_intersection(5, 4, 7);
  CHECK(a.wics == 210);
  CHECK(a.unlikely);
  auto b = unlikely_intersection(5, 4, 2);
  CHECK(b.wics == 5);
  CHECK_FALSE(b.unlikely);
  CHECK(unlikely_intersection(5, 4, 3).wics == 15);
  CHECK(unlikely_intersection(5, 4, 5).wics == 70);
}
