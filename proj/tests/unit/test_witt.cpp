#include "support.hpp"

#include "../oracles.hpp"
#include "qfp/error.hpp"
#include "qfp/witt.hpp"

using namespace qfp;

namespace {

Polynomial P(const char* s, std::uint32_t p, int n = 2) { return testing::P(s, p, n); }

WittVector W(std::uint32_t p, std::vector<const char*> comps, int n = 2) {
  std::vector<Polynomial> c;
  for (auto* s : comps) c.push_back(P(s, p, n));
  return WittVector(c[0].ring(), c);
}

WittVector random_witt(std::mt19937_64& rng, const Ring& ring, std::size_t len, int terms, unsigned deg) {
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < len; ++i) c.push_back(oracle::random_poly(rng, ring, terms, deg));
  return WittVector(ring, c);
}

}  // namespace

TEST_CASE("witt addition examples") {
  CHECK(witt_add(W(3, {"1", "0"}), W(3, {"1", "0"})) == W(3, {"2", "1"}));
  auto a = W(5, {"x+y", "x*y"});
  CHECK(witt_add(a, WittVector::zero(a.ring(), 2)) == a);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t r = 0; r < p; ++r) {
      for (std::uint32_t s = 0; s < p; ++s) {
        Ring ring(Prime(p), 1);
        auto tr = WittVector::teichmuller(Polynomial::constant(ring, r), 2);
        auto vs = verschiebung(WittVector::teichmuller(Polynomial::constant(ring, s), 2));
        CHECK(witt_add(tr, vs) == WittVector(ring, {Polynomial::constant(ring, r), Polynomial::constant(ring, s)}));
      }
    }
  }
}

TEST_CASE("witt multiplication examples") {
  auto r = P("x+2", 5), s = P("y^2", 5);
  CHECK(witt_mul(WittVector::teichmuller(r, 3), WittVector::teichmuller(s, 3)) ==
        WittVector::teichmuller(multiply(r, s), 3));
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto a = W(p, {"x+y", "x^2+1"});
    CHECK(witt_times_p(a) == WittVector(a.ring(), {Polynomial(a.ring()), frobenius_power(a[0], 1)}));
    CHECK(witt_mul(WittVector::integer(a.ring(), 2, 1), a) == a);
  }
  CHECK(WittVector::integer(Ring(Prime(3), 1), 2, 1) == W(3, {"1", "0"}, 1));
}

TEST_CASE("frobenius and verschiebung examples") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto a = W(p, {"x+y", "y", "x*y"});
    CHECK(witt_frobenius(verschiebung(a)) == witt_times_p(a));
    auto r = P("2x+y", p);
    CHECK(witt_frobenius(WittVector::teichmuller(r, 2)) == WittVector::teichmuller(frobenius_power(r, 1), 2));
  }
  CHECK(witt_frobenius(W(2, {"x", "y"})) == W(2, {"x^2", "y^2"}));
  auto one = W(7, {"1", "0"});
  CHECK(verschiebung(one) == W(7, {"0", "1"}));
  CHECK(verschiebung(one) == WittVector::integer(one.ring(), 2, 7));
  CHECK(verschiebung(WittVector::zero(one.ring(), 3)) == WittVector::zero(one.ring(), 3));
  CHECK_THROWS_AS(WittVector::zero(one.ring(), 5), RangeError);
}

TEST_CASE("restriction commutes with verschiebung") {
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {2u, 3u}) {
    Ring ring(Prime(p), 1);
    for (int t = 0; t < 5; ++t) {
      auto a = random_witt(rng, ring, 4, 2, 1);
      CHECK(restriction(verschiebung(verschiebung(a)), 3) == verschiebung(verschiebung(restriction(a, 3))));
    }
  }
}

TEST_CASE("delta1 oracle examples") {
  CHECK(delta1_witt_oracle(P("3x^2*y", 5)).is_zero());
  CHECK(delta1_witt_oracle(P("x+y", 3)) == P("x^2*y + x*y^2", 3));
  CHECK(delta1_witt_oracle(P("x^3+y^3", 2)) == P("x^3*y^3", 2));
}

TEST_CASE("property: ghost map is a ring homomorphism") {
  // Exhaustive over constants of W_2(F_3) and W_2(F_5).
  for (std::uint32_t p : {3u, 5u}) {
    Ring ring(Prime(p), 1);
    std::vector<WittVector> all;
    for (std::uint32_t a = 0; a < p; ++a) {
      for (std::uint32_t b = 0; b < p; ++b) {
        all.emplace_back(ring, std::vector<Polynomial>{Polynomial::constant(ring, a), Polynomial::constant(ring, b)});
      }
    }
    for (const auto& a : all) {
      for (const auto& b : all) {
        auto ga = a.ghost(), gb = b.ghost();
        std::vector<IntPoly> sum, prod;
        for (std::size_t i = 0; i < 2; ++i) {
          sum.push_back(ga[i] + gb[i]);
          prod.push_back(ga[i] * gb[i]);
        }
        CHECK(ghost_congruent(witt_add(a, b).ghost(), sum, p));
        CHECK(ghost_congruent(witt_mul(a, b).ghost(), prod, p));
      }
    }
  }
  std::mt19937_64 rng(32);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Ring ring(Prime(p), 2);
    for (int t = 0; t < 4; ++t) {
      auto a = random_witt(rng, ring, 3, 2, 2);
      auto b = random_witt(rng, ring, 3, 2, 2);
      auto ga = a.ghost(), gb = b.ghost();
      std::vector<IntPoly> sum, prod;
      for (std::size_t i = 0; i < 3; ++i) {
        sum.push_back(ga[i] + gb[i]);
        prod.push_back(ga[i] * gb[i]);
      }
      CHECK(ghost_congruent(witt_add(a, b).ghost(), sum, p));
      CHECK(ghost_congruent(witt_mul(a, b).ghost(), prod, p));
      CHECK(witt_add(witt_sub(a, b), b) == a);
      CHECK(witt_add(a, witt_neg(a)) == WittVector::zero(ring, 3));
    }
  }
}

TEST_CASE("property: FV = VF = p") {
  std::mt19937_64 rng(33);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Ring ring(Prime(p), 1);
    for (int t = 0; t < 4; ++t) {
      auto a = random_witt(rng, ring, 3, 2, 2);
      auto pa = witt_times_p(a);
      CHECK(witt_frobenius(verschiebung(a)) == pa);
      CHECK(verschiebung(witt_frobenius(a)) == pa);
    }
  }
}

TEST_CASE("property: restriction is a ring homomorphism") {
  std::mt19937_64 rng(34);
  for (std::uint32_t p : {2u, 3u}) {
    Ring ring(Prime(p), 1);
    for (int t = 0; t < 4; ++t) {
      auto a = random_witt(rng, ring, 3, 2, 2);
      auto b = random_witt(rng, ring, 3, 2, 2);
      for (std::size_t m : {1u, 2u}) {
        CHECK(restriction(witt_add(a, b), m) == witt_add(restriction(a, m), restriction(b, m)));
        CHECK(restriction(witt_mul(a, b), m) == witt_mul(restriction(a, m), restriction(b, m)));
      }
    }
  }
}
