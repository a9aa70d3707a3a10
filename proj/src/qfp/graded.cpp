// Degree-by-degree version of the ideal iteration for quasi-homogeneous f.
//
// Everything is graded: g has degree (p-1)d, Delta has degree p(p-1)d and u
// sends degree D' to (D' - top)/p with top = (p-1)W. So the degree-D piece of
// I_{m+1} is theta(K_{pD+c}) + g A_{D-(p-1)d} with K = I_m cap ker u, and only
// degrees D <= top can hold a monomial outside m^[p].
#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "qfp/error.hpp"
#include "qfp/qfp.hpp"

namespace qfp {

namespace {

using Row = std::vector<Term>;
using Pieces = std::map<std::uint64_t, std::vector<Row>>;

constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;

// dim A_D for the weighted polynomial ring, by the usual coin-change table.
class Counter {
 public:
  explicit Counter(std::vector<std::uint32_t> w) : w_(std::move(w)) {}

  std::uint64_t operator()(std::int64_t D) {
    if (D < 0) return 0;
    const auto need = static_cast<std::size_t>(D);
    if (need >= table_.size()) rebuild(need + 1);
    return table_[need];
  }

 private:
  void rebuild(std::size_t size) {
    table_.assign(std::max(size, 2 * table_.size()), 0);
    table_[0] = 1;
    for (auto wi : w_) {
      for (std::size_t k = wi; k < table_.size(); ++k) table_[k] = std::min(kSaturate, table_[k] + table_[k - wi]);
    }
  }

  std::vector<std::uint32_t> w_;
  std::vector<std::uint64_t> table_;
};

// Monomials of weighted degree D; `cap` bounds every exponent when set.
std::vector<Monomial> monomials(const std::vector<std::uint32_t>& w, std::uint64_t D, std::uint32_t cap) {
  std::vector<Monomial> out;
  const int n = static_cast<int>(w.size());
  Monomial m;
  auto rec = [&](auto&& self, int i, std::uint64_t left) -> void {
    const auto wi = w[static_cast<std::size_t>(i)];
    if (i == n - 1) {
      if (left % wi) return;
      std::uint64_t e = left / wi;
      if (e > cap) return;
      Monomial x = m;
      x.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
      x.deg += static_cast<std::uint32_t>(e);
      out.push_back(x);
      return;
    }
    for (std::uint64_t e = 0; e * wi <= left && e <= cap; ++e) {
      m.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
      m.deg += static_cast<std::uint32_t>(e);
      self(self, i + 1, left - e * wi);
      m.deg -= static_cast<std::uint32_t>(e);
    }
    m.exp[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 0, D);
  return out;
}

struct Index {
  std::vector<Monomial> mons;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> pos;

  Index() = default;
  explicit Index(std::vector<Monomial> m) : mons(std::move(m)) {
    pos.reserve(mons.size());
    for (std::uint32_t k = 0; k < mons.size(); ++k) pos.emplace(mons[k], k);
  }
  std::size_t size() const noexcept { return mons.size(); }
  const std::uint32_t* find(const Monomial& m) const {
    auto it = pos.find(m);
    return it == pos.end() ? nullptr : &it->second;
  }
};

// Row echelon form over F_p fed through a dense accumulator.
class Echelon {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Stored {
    std::size_t lead;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
  };

  Echelon(std::size_t width, std::uint32_t p) : p_(p), pivot_(width, npos), acc_(width, 0) {}

  void add(std::size_t col, std::uint32_t c) { acc_[col] = add_mod(acc_[col], c, p_); }

  // Reduces the accumulated row; returns its leading column, npos if dependent.
  std::size_t insert() {
    std::size_t lead = npos;
    for (std::size_t col = 0; col < acc_.size(); ++col) {
      const std::uint32_t v = acc_[col];
      if (!v) continue;
      if (pivot_[col] == npos) {
        lead = col;
        break;
      }
      const std::uint32_t f = p_ - v;
      for (const auto& [k, x] : rows_[pivot_[col]].entries) acc_[k] = static_cast<std::uint32_t>((acc_[k] + std::uint64_t{f} * x) % p_);
    }
    if (lead == npos) return npos;
    const std::uint32_t inv = inv_mod(acc_[lead], p_);
    Stored s{lead, {}};
    for (std::size_t k = lead; k < acc_.size(); ++k) {
      if (acc_[k]) {
        s.entries.emplace_back(static_cast<std::uint32_t>(k), mul_mod(acc_[k], inv, p_));
        acc_[k] = 0;
      }
    }
    pivot_[lead] = rows_.size();
    rows_.push_back(std::move(s));
    return lead;
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<Stored>& rows() const noexcept { return rows_; }

 private:
  std::uint32_t p_;
  std::vector<std::size_t> pivot_;
  std::vector<std::uint32_t> acc_;
  std::vector<Stored> rows_;
};

class Engine {
 public:
  Engine(const Delta1Context& ctx, const Grading& grading)
      : ctx_(ctx), p_(ctx.p()), n_(ctx.nvars()), w_(grading.weights) {
    for (auto x : w_) W_ += x;
    d_ = grading.degree;
    top_ = (p_ - 1) * W_;
    degG_ = (p_ - 1) * d_;
    c_ = static_cast<std::int64_t>(top_) - static_cast<std::int64_t>(p_ * degG_);
    for (const auto& t : ctx.delta().terms()) {
      Monomial key;
      for (int i = 0; i < n_; ++i) key.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(t.m[i] % p_);
      buckets_[key].push_back(t);
    }
  }

  std::uint64_t top() const noexcept { return top_; }
  std::uint64_t degG() const noexcept { return degG_; }
  std::int64_t c() const noexcept { return c_; }
  std::uint32_t p() const noexcept { return p_; }
  const std::vector<std::uint32_t>& weights() const noexcept { return w_; }
  bool self_contained() const noexcept { return W_ <= d_; }

  // Degree of the source piece feeding degree D of the next level.
  std::int64_t source(std::uint64_t D) const noexcept { return static_cast<std::int64_t>(p_ * D) + c_; }

  Row g_times(const Monomial& beta) const {
    Row r;
    r.reserve(ctx_.g().size());
    for (const auto& t : ctx_.g().terms()) r.push_back({mul(t.m, beta), t.c});
    return r;
  }

  // Adds [u(row) | theta(row)] into the accumulator.
  void fill(const Row& row, const Index& uidx, const Index& tidx, bool projected, Echelon& e) const {
    const std::size_t nU = uidx.size();
    Monomial key, w;
    for (const auto& t : row) {
      if (nU) {
        bool all = true;
        for (int i = 0; i < n_ && all; ++i) all = t.m[i] % p_ == p_ - 1;
        if (all) {
          for (int i = 0; i < n_; ++i) w.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((t.m[i] - (p_ - 1)) / p_);
          if (const auto* k = uidx.find(w)) e.add(*k, t.c);
        }
      }
      for (int i = 0; i < n_; ++i) key.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((p_ - 1 - t.m[i] % p_) % p_);
      auto it = buckets_.find(key);
      if (it == buckets_.end()) continue;
      for (const auto& dt : it->second) {
        bool ok = true;
        for (int i = 0; i < n_; ++i) {
          const std::uint32_t v = (dt.m[i] + t.m[i] + 1 - p_) / p_;
          if (projected && v >= p_) {
            ok = false;
            break;
          }
          w.exp[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(v);
        }
        if (!ok) continue;
        if (const auto* k = tidx.find(w)) e.add(nU + *k, mul_mod(t.c, dt.c, p_));
      }
    }
  }

  // Rows spanning (I_m)_{D'}: stored theta rows plus g x^beta.
  template <class Visit>
  bool for_each_row(const Pieces& prev, std::int64_t Dp, Visit&& visit) const {
    if (Dp < 0) return true;
    auto it = prev.find(static_cast<std::uint64_t>(Dp));
    if (it != prev.end()) {
      for (const auto& r : it->second) {
        if (!visit(r)) return false;
      }
    }
    if (static_cast<std::uint64_t>(Dp) >= degG_) {
      for (const auto& beta : monomials(w_, static_cast<std::uint64_t>(Dp) - degG_, 0xFFFF)) {
        if (!visit(g_times(beta))) return false;
      }
    }
    return true;
  }

  Index u_columns(std::int64_t Dp) const {
    if (Dp < static_cast<std::int64_t>(top_) || (Dp - static_cast<std::int64_t>(top_)) % p_) return {};
    return Index(monomials(w_, static_cast<std::uint64_t>(Dp - static_cast<std::int64_t>(top_)) / p_, 0xFFFF));
  }

 private:
  const Delta1Context& ctx_;
  std::uint32_t p_;
  int n_;
  std::vector<std::uint32_t> w_;
  std::uint64_t W_ = 0, d_ = 0, top_ = 0, degG_ = 0;
  std::int64_t c_ = 0;
  std::unordered_map<Monomial, std::vector<Term>, MonomialHash> buckets_;
};

bool escapes(const Row& r, int n, std::uint32_t p) {
  for (const auto& t : r) {
    if (!monomial_in_bracket(t.m, n, p)) return true;
  }
  return false;
}

// Same degree-D piece for two consecutive levels, by ranks.
bool same_piece(const Engine& eng, const Pieces& a, const Pieces& b, std::uint64_t D) {
  const auto ia = a.find(D), ib = b.find(D);
  const bool ea = ia == a.end() || ia->second.empty();
  const bool eb = ib == b.end() || ib->second.empty();
  if (ea && eb) return true;
  Index cols(monomials(eng.weights(), D, 0xFFFF));
  auto load = [&](Echelon& e, const Row& r) {
    for (const auto& t : r) e.add(*cols.find(t.m), t.c);
    e.insert();
  };
  std::vector<Row> grows;
  if (D >= eng.degG()) {
    for (const auto& beta : monomials(eng.weights(), D - eng.degG(), 0xFFFF)) grows.push_back(eng.g_times(beta));
  }
  Echelon ra(cols.size(), eng.p()), rb(cols.size(), eng.p()), ru(cols.size(), eng.p());
  for (const auto& r : grows) {
    load(ra, r);
    load(rb, r);
    load(ru, r);
  }
  if (!ea) {
    for (const auto& r : ia->second) {
      load(ra, r);
      load(ru, r);
    }
  }
  if (!eb) {
    for (const auto& r : ib->second) {
      load(rb, r);
      load(ru, r);
    }
  }
  return ra.rank() == ru.rank() && rb.rank() == ru.rank();
}

}  // namespace

HeightResult qfp_height_graded(const Delta1Context& ctx, const Grading& grading, const HeightOptions& opts) {
  const Polynomial& f = ctx.f();
  const int n = ctx.nvars();
  if (grading.weights.size() != static_cast<std::size_t>(n)) throw ArgumentError("grading has the wrong number of weights");
  for (const auto& t : f.terms()) {
    if (weighted_degree(t.m, grading.weights) != grading.degree) throw ArgumentError("f is not homogeneous for the given grading");
  }
  if (opts.cutoff == 0) throw ArgumentError("cutoff must be positive");

  HeightResult r;
  r.method = HeightMethod::Graded;
  Engine eng(ctx, grading);
  const std::uint32_t p = eng.p();
  const std::uint64_t top = eng.top();

  r.trace.push_back({1, 1, static_cast<std::uint32_t>(eng.degG())});
  if (!in_bracket_power(ctx.g(), p)) {
    r.outcome = HeightOutcome::Finite;
    r.height = 1;
    r.examined = 1;
    return r;
  }
  r.examined = 1;
  if (ctx.delta().is_zero()) {
    // theta vanishes, so every I_m equals (g)
    r.outcome = HeightOutcome::Infinite;
    r.certificate = Certificate::Stabilized;
    r.stabilized_at = 1;
    r.note = "Delta_1(f^(p-1)) = 0";
    return r;
  }
  if (opts.cutoff == 1) return r;

  const bool self_contained = eng.self_contained();
  const std::uint64_t cap = opts.window_cap.value_or(std::numeric_limits<std::uint64_t>::max());
  Counter count(grading.weights);

  // Degree sets S[m] for levels 2..M, plus whether the cap dropped something.
  auto plan = [&](unsigned M, bool& capped) {
    std::vector<std::vector<std::uint64_t>> S(M + 1);
    capped = cap < top;
    auto base = [&] {
      std::set<std::uint64_t> s;
      for (std::uint64_t D = 0; D <= std::min(top, cap); ++D) s.insert(D);
      return s;
    };
    std::set<std::uint64_t> cur = base();
    S[M].assign(cur.begin(), cur.end());
    for (unsigned m = M - 1; m >= 2; --m) {
      std::set<std::uint64_t> s = base();
      for (auto D : S[m + 1]) {
        std::int64_t Dp = eng.source(D);
        if (Dp < 0) continue;
        if (static_cast<std::uint64_t>(Dp) > cap) {
          capped = true;
          continue;
        }
        s.insert(static_cast<std::uint64_t>(Dp));
      }
      S[m].assign(s.begin(), s.end());
    }
    return S;
  };
  auto cost = [&](unsigned M) {
    bool capped = false;
    auto S = plan(M, capped);
    std::uint64_t total = 0;
    for (unsigned m = 1; m < M; ++m) {
      for (auto D : S[m + 1]) {
        std::int64_t Dp = eng.source(D);
        if (Dp < 0) continue;
        total = std::min(kSaturate, total + count(Dp - static_cast<std::int64_t>(eng.degG())));
        if (m >= 2) total = std::min(kSaturate, total + count(Dp));
        if (count(static_cast<std::int64_t>(D)) > 2'000'000) return kSaturate;  // accumulator width
      }
    }
    return total;
  };

  unsigned M = opts.cutoff;
  while (M >= 2 && cost(M) > opts.row_limit) --M;
  if (M < 2) {
    r.outcome = HeightOutcome::UnknownBeyond;
    r.note = "row budget exhausted before level 2";
    return r;
  }
  bool capped = false;
  const auto S = plan(M, capped);

  Pieces prev;
  for (unsigned m = 1; m < M; ++m) {
    const unsigned level = m + 1;
    const bool projected = !self_contained && level == M;
    Pieces cur;
    bool escaped = false;
    std::size_t dim = 0;
    std::uint32_t maxdeg = 0;
    for (auto D : S[level]) {
      const std::int64_t Dp = eng.source(D);
      if (Dp < 0) continue;
      Index tidx(monomials(eng.weights(), D, projected ? p - 1 : 0xFFFF));
      if (tidx.size() == 0) continue;
      Index uidx = eng.u_columns(Dp);
      const std::size_t nU = uidx.size();
      Echelon ech(nU + tidx.size(), p);
      eng.for_each_row(prev, Dp, [&](const Row& row) {
        eng.fill(row, uidx, tidx, projected, ech);
        const std::size_t lead = ech.insert();
        if (projected && lead != Echelon::npos && lead >= nU) {
          escaped = true;
          return false;
        }
        return true;
      });
      if (projected) {
        if (escaped) break;
        continue;
      }
      std::vector<Row> rows;
      for (const auto& s : ech.rows()) {
        if (s.lead < nU) continue;
        Row row;
        for (const auto& [k, x] : s.entries) row.push_back({tidx.mons[k - nU], x});
        if (D <= top && escapes(row, n, p)) escaped = true;
        rows.push_back(std::move(row));
      }
      if (!rows.empty()) {
        dim += rows.size();
        maxdeg = std::max(maxdeg, static_cast<std::uint32_t>(D));
        cur.emplace(D, std::move(rows));
      }
      if (escaped) break;
    }
    r.trace.push_back({level, dim, maxdeg});
    if (escaped) {
      r.outcome = HeightOutcome::Finite;
      r.height = level;
      r.examined = level;
      return r;
    }
    r.examined = level;
    if (self_contained && !capped) {
      bool same = true;
      for (std::uint64_t D = 0; D <= top && same; ++D) same = same_piece(eng, prev, cur, D);
      if (same) {
        r.outcome = HeightOutcome::Infinite;
        r.certificate = Certificate::Stabilized;
        r.stabilized_at = m;
        return r;
      }
    }
    prev = std::move(cur);
  }
  r.outcome = HeightOutcome::UnknownBeyond;
  if (capped) {
    r.note = "degree window capped; only finite heights are certified";
  } else if (M < opts.cutoff) {
    r.note = "row budget limits the search to level " + std::to_string(M);
  } else if (!self_contained) {
    r.note = "graded window not self-contained (sum of weights exceeds the degree)";
  }
  return r;
}

}  // namespace qfp
