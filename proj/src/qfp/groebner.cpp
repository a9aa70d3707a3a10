// Buchberger's algorithm with the sugar strategy and the Gebauer-Moeller
// pair criteria, plus a separate cofactor-tracking run for syzygies.

#include "qfp/groebner.hpp"

#include <algorithm>
#include <map>

#include "qfp/error.hpp"

namespace qfp {

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const noexcept {
  if (perm.empty()) return kind == OrderKind::Grevlex ? grevlex_cmp(a, b) : lex_cmp(a, b);
  Monomial pa, pb;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    pa.exp[k] = a.exp[static_cast<std::size_t>(perm[k])];
    pb.exp[k] = b.exp[static_cast<std::size_t>(perm[k])];
  }
  pa.deg = a.deg;
  pb.deg = b.deg;
  return kind == OrderKind::Grevlex ? grevlex_cmp(pa, pb) : lex_cmp(pa, pb);
}

namespace {

using Terms = std::vector<Term>;

struct Ctx {
  const MonomialOrder& order;
  std::uint32_t mod;

  bool greater(const Monomial& a, const Monomial& b) const { return order.compare(a, b) > 0; }
};

Terms sorted_for(const Polynomial& f, const Ctx& cx) {
  Terms t(f.terms().begin(), f.terms().end());
  if (cx.order.kind != OrderKind::Grevlex || !cx.order.perm.empty()) {
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return cx.greater(a.m, b.m); });
  }
  return t;
}

void make_monic(Terms& t, std::uint32_t mod) {
  if (t.empty() || t[0].c == 1) return;
  std::uint32_t inv = inv_mod(t[0].c, mod);
  for (auto& x : t) x.c = mul_mod(x.c, inv, mod);
}

// f[from..] - c * m * g, merged in order.
Terms sub_scaled(const Terms& f, std::size_t from, const Terms& g, std::uint32_t c, const Monomial& m,
                 const Ctx& cx) {
  Terms out;
  out.reserve(f.size() - from + g.size());
  std::size_t i = from, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(f[i++]);
      continue;
    }
    Term gt{mul(g[j].m, m), mul_mod(g[j].c, c, cx.mod)};
    if (i == f.size()) {
      if (gt.c) out.push_back({gt.m, sub_mod(0, gt.c, cx.mod)});
      ++j;
      continue;
    }
    int s = cx.order.compare(f[i].m, gt.m);
    if (s > 0) {
      out.push_back(f[i++]);
    } else if (s < 0) {
      if (gt.c) out.push_back({gt.m, sub_mod(0, gt.c, cx.mod)});
      ++j;
    } else {
      std::uint32_t v = sub_mod(f[i].c, gt.c, cx.mod);
      if (v) out.push_back({gt.m, v});
      ++i;
      ++j;
    }
  }
  return out;
}

// Normal form against monic polynomials `basis` (only those flagged active).
Terms normal_form(Terms f, const std::vector<const Terms*>& basis, const Ctx& cx) {
  Terms rem;
  std::size_t i = 0;
  while (i < f.size()) {
    const Term lt = f[i];
    const Terms* div = nullptr;
    for (const Terms* g : basis) {
      if (divides((*g)[0].m, lt.m)) {
        div = g;
        break;
      }
    }
    if (!div) {
      rem.push_back(lt);
      ++i;
      continue;
    }
    f = sub_scaled(f, i, *div, lt.c, quotient(lt.m, (*div)[0].m), cx);
    i = 0;
  }
  return rem;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t sugar;
};

class Buchberger {
 public:
  explicit Buchberger(const Ctx& cx) : cx_(cx) {}

  void add_input(const Polynomial& f) {
    if (f.is_zero()) return;
    Terms t = sorted_for(f, cx_);
    insert(std::move(t), f.total_degree());
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin(); it != pairs_.end(); ++it) {
        if (it->sugar < best->sugar) {
          best = it;
        } else if (it->sugar == best->sugar) {
          int s = cx_.order.compare(it->lcm, best->lcm);
          if (s < 0 || (s == 0 && std::tie(it->i, it->j) < std::tie(best->i, best->j))) best = it;
        }
      }
      Pair pr = *best;
      pairs_.erase(best);
      const Terms& a = polys_[pr.i];
      const Terms& b = polys_[pr.j];
      Terms s = sub_scaled(Terms{}, 0, a, cx_.mod - 1, quotient(pr.lcm, a[0].m), cx_);  // +t_a * a
      s = sub_scaled(s, 0, b, 1, quotient(pr.lcm, b[0].m), cx_);
      insert(std::move(s), pr.sugar);
    }
  }

  std::vector<Terms> reduced() const {
    std::vector<Terms> g;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) g.push_back(polys_[k]);
    }
    std::vector<Terms> out;
    for (std::size_t k = 0; k < g.size(); ++k) {
      std::vector<const Terms*> others;
      for (std::size_t l = 0; l < g.size(); ++l) {
        if (l != k) others.push_back(&g[l]);
      }
      Terms tail(g[k].begin() + 1, g[k].end());
      Terms r = normal_form(std::move(tail), others, cx_);
      r.insert(r.begin(), g[k][0]);
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(),
              [&](const Terms& x, const Terms& y) { return cx_.order.compare(x[0].m, y[0].m) < 0; });
    return out;
  }

 private:
  void insert(Terms t, std::uint32_t sugar) {
    std::vector<const Terms*> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) basis.push_back(&polys_[k]);
    }
    Terms h = normal_form(std::move(t), basis, cx_);
    if (h.empty()) return;
    make_monic(h, cx_.mod);
    update(std::move(h), sugar);
  }

  // Gebauer-Moeller update with the new element h.
  void update(Terms h, std::uint32_t sugar) {
    const std::size_t t = polys_.size();
    const Monomial lh = h[0].m;
    polys_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(true);

    std::vector<Pair> c;
    for (std::size_t k = 0; k < t; ++k) {
      if (!active_[k]) continue;
      const Monomial& lk = polys_[k][0].m;
      Monomial l = lcm(lk, lh);
      std::uint32_t s = std::max(sugar_[k] + l.deg - lk.deg, sugar + l.deg - lh.deg);
      c.push_back({k, t, l, s});
    }
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const Pair& pa = c[a];
      bool keep = coprime(polys_[pa.i][0].m, lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b) {
          if (divides(c[b].lcm, pa.lcm)) keep = false;
        }
        for (std::size_t b = 0; b < d.size() && keep; ++b) {
          if (divides(d[b].lcm, pa.lcm)) keep = false;
        }
      }
      if (keep) d.push_back(pa);
    }
    std::vector<Pair> next;
    for (const Pair& pr : pairs_) {
      const Monomial& li = polys_[pr.i][0].m;
      const Monomial& lj = polys_[pr.j][0].m;
      if (!divides(lh, pr.lcm) || lcm(li, lh) == pr.lcm || lcm(lj, lh) == pr.lcm) next.push_back(pr);
    }
    for (const Pair& pr : d) {
      if (!coprime(polys_[pr.i][0].m, lh)) next.push_back(pr);
    }
    pairs_ = std::move(next);
    for (std::size_t k = 0; k < t; ++k) {
      if (active_[k] && divides(lh, polys_[k][0].m)) active_[k] = false;
    }
  }

  const Ctx& cx_;
  std::vector<Terms> polys_;
  std::vector<std::uint32_t> sugar_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

Polynomial to_poly(const Ring& ring, Terms t) { return Polynomial::from_terms(ring, std::move(t)); }

}  // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  if (gens.empty()) return {};
  const Ring& ring = gens[0].ring();
  for (const auto& g : gens) {
    if (!g.ring().compatible(ring)) throw ArgumentError("generators live in different rings");
  }
  if (ring.kind() != CoeffRing::ModP) throw ArgumentError("Groebner bases need coefficients in F_p");
  Ctx cx{order, ring.modulus()};
  Buchberger bb(cx);
  std::vector<const Polynomial*> sorted;
  for (const auto& g : gens) sorted.push_back(&g);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Polynomial* a, const Polynomial* b) {
    if (a->is_zero() || b->is_zero()) return !a->is_zero() && b->is_zero();
    return grevlex_cmp(a->leading().m, b->leading().m) < 0;
  });
  for (const auto* g : sorted) bb.add_input(*g);
  bb.run();
  std::vector<Polynomial> out;
  for (auto& t : bb.reduced()) out.push_back(to_poly(ring, std::move(t)));
  return out;
}

Term leading_term(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw ArgumentError("zero polynomial has no leading term");
  if (order.kind == OrderKind::Grevlex && order.perm.empty()) return f.leading();
  Term best = f.terms()[0];
  for (const auto& t : f.terms()) {
    if (order.compare(t.m, best.m) > 0) best = t;
  }
  return best;
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  if (f.ring().kind() != CoeffRing::ModP) throw ArgumentError("reduction needs coefficients in F_p");
  Ctx cx{order, f.ring().modulus()};
  std::vector<Terms> g;
  for (const auto& b : basis) {
    if (!b.ring().compatible(f.ring())) throw ArgumentError("basis lives in a different ring");
    if (b.is_zero()) continue;
    Terms t = sorted_for(b, cx);
    make_monic(t, cx.mod);
    g.push_back(std::move(t));
  }
  std::vector<const Terms*> ptrs;
  for (const auto& t : g) ptrs.push_back(&t);
  return to_poly(f.ring(), normal_form(sorted_for(f, cx), ptrs, cx));
}

Ideal::Ideal(Ring ring, std::vector<Polynomial> gens, MonomialOrder order)
    : ring_(std::move(ring)), gens_(), order_(std::move(order)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (!g.ring().compatible(ring_)) throw ArgumentError("generator lives in a different ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

const std::vector<Polynomial>& Ideal::basis() const {
  std::call_once(cache_->once, [this] { cache_->basis = groebner_basis(gens_, order_); });
  return cache_->basis;
}

bool Ideal::contains(const Polynomial& f) const { return reduce(f, basis(), order_).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.generators()) {
    if (!contains(g)) return false;
  }
  return true;
}

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b[0].total_degree() == 0;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  if (!a.ring().compatible(b.ring())) return false;
  if (a.order().kind == b.order().kind && a.order().perm == b.order().perm) return a.basis() == b.basis();
  return a.contains(b) && b.contains(a);
}

bool zero_dimensional(const Ideal& ideal) {
  const auto& b = ideal.basis();
  if (ideal.is_unit()) return true;
  const int n = ideal.ring().nvars();
  for (int v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& g : b) {
      const Monomial lm = leading_term(g, ideal.order()).m;
      if (lm[v] > 0 && lm.deg == lm[v]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool contained_in_monomial_ideal(const Ideal& ideal, std::uint64_t q) {
  for (const auto& g : ideal.generators()) {
    if (!in_bracket_power(g, q)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Syzygies.
//
// Every basis element carries cofactors c with element = sum c_j h_j. Each
// S-pair gives a module element whose image is S minus its reductions; when
// that vanishes it is a syzygy, otherwise it becomes a new basis element.
// Coprime pairs contribute the Koszul relation. By Schreyer's theorem these
// generate all syzygies of the basis, and pulling back along the cofactors
// gives all syzygies of h because every h_j is itself a basis element.

namespace {

using Cof = std::map<std::size_t, Polynomial>;

void axpy(Cof& a, const Cof& b, const Monomial& m, std::uint32_t c, std::uint32_t mod) {
  // a -= c * m * b
  for (const auto& [k, poly] : b) {
    Polynomial t = poly.mul_term(m, (mod - c % mod) % mod);
    auto it = a.find(k);
    if (it == a.end()) {
      if (!t.is_zero()) a.emplace(k, std::move(t));
    } else {
      it->second = it->second + t;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

Cof scale(const Cof& a, std::uint32_t c) {
  Cof out;
  for (const auto& [k, poly] : a) {
    Polynomial t = poly.scaled(c);
    if (!t.is_zero()) out.emplace(k, std::move(t));
  }
  return out;
}

Cof times(const Cof& a, const Polynomial& f) {
  Cof out;
  for (const auto& [k, poly] : a) {
    Polynomial t = multiply(poly, f);
    if (!t.is_zero()) out.emplace(k, std::move(t));
  }
  return out;
}

struct Elem {
  Polynomial f;  // monic
  Cof cof;
};

}  // namespace

Polynomial apply_syzygy(const SyzygyVector& sigma, const std::vector<Polynomial>& h) {
  if (sigma.size() != h.size()) throw ArgumentError("syzygy length mismatch");
  if (h.empty()) throw ArgumentError("empty syzygy");
  Polynomial acc(h[0].ring());
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (!sigma[j].is_zero() && !h[j].is_zero()) acc = acc + multiply(sigma[j], h[j]);
  }
  return acc;
}

std::vector<SyzygyVector> syzygy_generators(const std::vector<Polynomial>& h) {
  if (h.empty()) return {};
  const Ring& ring = h[0].ring();
  if (ring.kind() != CoeffRing::ModP) throw ArgumentError("syzygies need coefficients in F_p");
  for (const auto& x : h) {
    if (!x.ring().compatible(ring)) throw ArgumentError("syzygy inputs live in different rings");
  }
  const std::uint32_t mod = ring.modulus();
  const std::size_t N = h.size();

  std::vector<Cof> raw;
  std::vector<Elem> elems;
  for (std::size_t j = 0; j < N; ++j) {
    if (h[j].is_zero()) {
      Cof unit;
      unit.emplace(j, Polynomial::constant(ring, 1));
      raw.push_back(std::move(unit));
      continue;
    }
    std::uint32_t inv = inv_mod(h[j].leading().c, mod);
    Cof c;
    c.emplace(j, Polynomial::constant(ring, inv));
    elems.push_back({h[j].scaled(inv), std::move(c)});
  }

  struct P {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<P> pairs;
  auto add_pairs = [&](std::size_t t) {
    for (std::size_t k = 0; k < t; ++k) pairs.push_back({k, t, lcm(elems[k].f.leading().m, elems[t].f.leading().m)});
  };
  for (std::size_t t = 0; t < elems.size(); ++t) add_pairs(t);

  while (!pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      int s = grevlex_cmp(it->lcm, best->lcm);
      if (s < 0 || (s == 0 && std::tie(it->i, it->j) < std::tie(best->i, best->j))) best = it;
    }
    P pr = *best;
    pairs.erase(best);
    const Elem& a = elems[pr.i];
    const Elem& b = elems[pr.j];
    if (coprime(a.f.leading().m, b.f.leading().m)) {
      Cof k = times(a.cof, b.f);
      Cof kb = times(b.cof, a.f);
      axpy(k, kb, Monomial{}, 1, mod);
      raw.push_back(std::move(k));
      continue;
    }
    const Monomial ta = quotient(pr.lcm, a.f.leading().m);
    const Monomial tb = quotient(pr.lcm, b.f.leading().m);
    Polynomial s = a.f.mul_term(ta, 1) - b.f.mul_term(tb, 1);
    Cof cof;
    axpy(cof, a.cof, ta, mod - 1, mod);
    axpy(cof, b.cof, tb, 1, mod);
    // Top-reduce until zero or irreducible.
    while (!s.is_zero()) {
      const Term lt = s.leading();
      const Elem* div = nullptr;
      for (const auto& e : elems) {
        if (divides(e.f.leading().m, lt.m)) {
          div = &e;
          break;
        }
      }
      if (!div) break;
      const Monomial t = quotient(lt.m, div->f.leading().m);
      s = s - div->f.mul_term(t, lt.c);
      axpy(cof, div->cof, t, lt.c, mod);
    }
    if (s.is_zero()) {
      if (!cof.empty()) raw.push_back(std::move(cof));
      continue;
    }
    std::uint32_t inv = inv_mod(s.leading().c, mod);
    elems.push_back({s.scaled(inv), scale(cof, inv)});
    add_pairs(elems.size() - 1);
  }

  std::vector<SyzygyVector> out;
  for (auto& c : raw) {
    if (c.empty()) continue;
    SyzygyVector v(N, Polynomial(ring));
    for (auto& [k, poly] : c) v[k] = std::move(poly);
    if (!apply_syzygy(v, h).is_zero()) throw InvariantError("syzygy check failed");
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace qfp
