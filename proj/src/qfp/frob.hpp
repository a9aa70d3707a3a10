#ifndef QFP_FROB_HPP
#define QFP_FROB_HPP

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qfp/poly.hpp"

namespace qfp {

using Fraction = boost::rational<std::int64_t>;

/// nu_f(p^e) for e = 1..size().
struct NuTable {
  std::uint32_t p = 0;
  std::vector<std::uint64_t> nu;

  std::uint64_t at(unsigned e) const { return nu.at(e - 1); }
  unsigned max_e() const noexcept { return static_cast<unsigned>(nu.size()); }
};

/// Largest N with f^N not in m^[p^e]. f must vanish at the origin.
std::uint64_t nu(const Polynomial& f, unsigned e);
/// nu for e = 1..e_max, each search starting from p * previous value.
NuTable nu_table(const Polynomial& f, unsigned e_max);

/// Fedder: f^{p-1} not in m^[p].
bool fedder_f_pure(const Polynomial& f);

struct FptHypotheses {
  bool homogeneous = false;            // standard grading
  bool isolated_singularity = false;   // (f, df) zero-dimensional
  bool p_odd = false;
  bool p_gt_n_minus_2 = false;
  bool not_general_type = false;       // n >= deg f
  /// What fpt_resolve insists on before claiming an exact value.
  bool required() const noexcept { return homogeneous && p_odd && p_gt_n_minus_2; }
  bool all() const noexcept { return required() && isolated_singularity && not_general_type; }
};

enum class FptMethod { Bounds, FPure, DenominatorP, Unresolved };

struct FptReport {
  Fraction lower{0};
  Fraction upper{1};
  std::optional<Fraction> exact;
  FptMethod method = FptMethod::Bounds;
  FptHypotheses flags;
  bool f_pure = false;
  NuTable table;
  std::string note;
};

const char* to_string(FptMethod m) noexcept;

FptHypotheses fpt_hypotheses(const Polynomial& f);
/// Nested intervals [nu/p^e, (nu+1)/p^e] intersected over e <= e_max.
FptReport fpt_bounds(const Polynomial& f, unsigned e_max);
/// Exact value 1 when F-pure; otherwise 1 - h/p when the required flags hold
/// and nu_f(p^2) = p^2 - h p - 1 confirms it; bounds otherwise. The isolated
/// singularity and degree flags are recorded but do not gate.
FptReport fpt_resolve(const Polynomial& f);

/// Largest e with p^e representable as a bracket exponent (p^e - 1 <= 65535).
unsigned max_bracket_exponent(std::uint32_t p) noexcept;

}  // namespace qfp

#endif  // QFP_FROB_HPP
