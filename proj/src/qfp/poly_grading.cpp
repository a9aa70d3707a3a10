#include <boost/rational.hpp>
#include <numeric>

#include "qfp/error.hpp"
#include "qfp/poly.hpp"

namespace qfp {

namespace {

using Q = boost::rational<long long>;

struct Nullspace {
  std::vector<std::vector<Q>> basis;  // each of length ncols
};

Nullspace nullspace(std::vector<std::vector<Q>> rows, std::size_t ncols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].numerator() == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Q inv = Q(1) / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].numerator() == 0) continue;
      Q factor = rows[i][c];
      for (std::size_t k = 0; k < ncols; ++k) rows[i][k] -= factor * rows[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  Nullspace ns;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Q> v(ncols, Q(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<std::size_t>(pivot_col[i])] = -rows[i][free];
    ns.basis.push_back(std::move(v));
  }
  return ns;
}

// Clears denominators and divides by the gcd; empty if any entry is not positive.
std::vector<std::uint32_t> primitive_positive(const std::vector<Q>& v) {
  long long den = 1;
  for (const auto& x : v) den = std::lcm(den, x.denominator());
  std::vector<long long> ints;
  long long g = 0;
  for (const auto& x : v) {
    long long k = x.numerator() * (den / x.denominator());
    ints.push_back(k);
    g = std::gcd(g, k < 0 ? -k : k);
  }
  if (g == 0) return {};
  bool all_pos = true, all_neg = true;
  for (auto k : ints) {
    all_pos = all_pos && k > 0;
    all_neg = all_neg && k < 0;
  }
  if (!all_pos && !all_neg) return {};
  std::vector<std::uint32_t> out;
  for (auto k : ints) {
    long long w = (k < 0 ? -k : k) / g;
    if (w > 0xFFFF) return {};
    out.push_back(static_cast<std::uint32_t>(w));
  }
  return out;
}

}  // namespace

bool Grading::standard() const noexcept {
  for (auto w : weights) {
    if (w != 1) return false;
  }
  return true;
}

std::uint64_t weighted_degree(const Monomial& m, std::span<const std::uint32_t> weights) noexcept {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) d += std::uint64_t{weights[i]} * m[static_cast<int>(i)];
  return d;
}

std::optional<Grading> find_grading(const Polynomial& f) {
  if (f.is_zero()) throw ArgumentError("find_grading needs a nonzero polynomial");
  const int n = f.ring().nvars();
  const auto terms = f.terms();

  std::vector<int> used;
  auto mx = f.max_exponents();
  for (int i = 0; i < n; ++i) {
    if (mx[static_cast<std::size_t>(i)]) used.push_back(i);
  }

  auto finish = [&](std::vector<std::uint32_t> w_used) {
    Grading g;
    g.weights.assign(static_cast<std::size_t>(n), 1);
    for (std::size_t k = 0; k < used.size(); ++k) g.weights[static_cast<std::size_t>(used[k])] = w_used[k];
    g.degree = weighted_degree(terms[0].m, g.weights);
    return g;
  };

  if (f.is_homogeneous()) return finish(std::vector<std::uint32_t>(used.size(), 1));

  std::vector<std::vector<Q>> rows;
  for (std::size_t k = 1; k < terms.size(); ++k) {
    std::vector<Q> row;
    for (int v : used) row.emplace_back(static_cast<long long>(terms[k].m[v]) - terms[0].m[v]);
    rows.push_back(std::move(row));
  }
  // A nonzero constant term together with other terms forces some weight to 0.
  if (used.empty()) return finish({});
  Nullspace ns = nullspace(rows, used.size());
  if (ns.basis.empty()) return std::nullopt;
  if (ns.basis.size() == 1) {
    auto w = primitive_positive(ns.basis[0]);
    if (w.empty()) return std::nullopt;
    return finish(std::move(w));
  }

  // Higher-dimensional solution cone: bounded search over small positive
  // values of the free coordinates, keeping the primitive solution with the
  // smallest weight sum.
  const std::size_t dim = ns.basis.size();
  const int kSearch = dim <= 3 ? 12 : dim <= 5 ? 4 : 2;
  std::vector<int> coef(dim, 1);
  std::vector<std::uint32_t> best;
  std::uint64_t best_sum = ~0ull;
  for (;;) {
    std::vector<Q> v(used.size(), Q(0));
    for (std::size_t b = 0; b < dim; ++b) {
      for (std::size_t k = 0; k < used.size(); ++k) v[k] += ns.basis[b][k] * coef[b];
    }
    auto w = primitive_positive(v);
    if (!w.empty()) {
      std::uint64_t s = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
      if (s < best_sum || (s == best_sum && w < best)) {
        best_sum = s;
        best = w;
      }
    }
    std::size_t i = 0;
    while (i < dim && coef[i] == kSearch) coef[i++] = 1;
    if (i == dim) break;
    ++coef[i];
  }
  if (best.empty()) return std::nullopt;
  return finish(std::move(best));
}

}  // namespace qfp
