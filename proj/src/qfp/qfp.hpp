#ifndef QFP_QFP_HPP
#define QFP_QFP_HPP

#include <optional>
#include <string>
#include <vector>

#include "qfp/groebner.hpp"
#include "qfp/poly.hpp"

namespace qfp {

/// Witt carry Delta_1(a) = ((sum a_i M_i)^p - sum (a_i M_i)^p) / p with
/// coefficients lifted to [0, p); computed over Z/p^2.
Polynomial delta1(const Polynomial& a);
/// Same value by summing over compositions of p (small inputs only).
Polynomial delta1_multinomial(const Polynomial& a);
/// Delta_1(f^N) without forming (f^N)^p: with F^p = A + p D over Z/p^2,
/// (F^N)^p = A^N + N p D A^{N-1}.
Polynomial delta1_power(const Polynomial& f, std::uint64_t n);

/// Trace dual to (x_1...x_n)^{p-1}: keeps terms x^{pw + (p-1)} as x^w.
Polynomial u_map(const Polynomial& b);

/// f, g = f^{p-1} and Delta = Delta_1(g).
class Delta1Context {
 public:
  explicit Delta1Context(Polynomial f);

  const Polynomial& f() const noexcept { return f_; }
  const Polynomial& g() const noexcept { return g_; }
  const Polynomial& delta() const noexcept { return delta_; }
  std::uint32_t p() const noexcept { return f_.ring().p(); }
  int nvars() const noexcept { return f_.ring().nvars(); }

 private:
  Polynomial f_, g_, delta_;
};

/// theta(a) = u(Delta * a).
Polynomial theta(const Delta1Context& ctx, const Polynomial& a);

/// I_{m+1} = theta(I_m cap ker u) + (g), computed through syzygies of the
/// u-images u(x^alpha g_i).
Ideal next_ideal(const Delta1Context& ctx, const Ideal& ideal);

enum class Certificate { None, CertA, CertB, Stabilized };
const char* to_string(Certificate c) noexcept;

/// CertA: f^{p-2} in m^[p]. CertB: f^{p-1} in m^[p] and
/// f^{(p+1)(p-2)} Delta_1(f) in m^[p^2] (canonical representative of Delta_1).
Certificate not_qfp_certificate(const Polynomial& f);

enum class HeightOutcome { Finite, Infinite, UnknownBeyond };
enum class HeightMethod { Auto, Exact, Graded };
const char* to_string(HeightOutcome o) noexcept;
const char* to_string(HeightMethod m) noexcept;
std::optional<HeightMethod> parse_method(std::string_view s) noexcept;

struct LevelTrace {
  unsigned level = 0;
  std::size_t generators = 0;   // exact: basis size; graded: total piece dimension
  std::uint32_t max_degree = 0;
};

struct HeightOptions {
  unsigned cutoff = 4;
  HeightMethod method = HeightMethod::Auto;
  bool certificates = true;
  /// Graded: optional cap on the degrees carried between levels.
  std::optional<std::uint64_t> window_cap;
  /// Graded: budget on streamed rows across all levels.
  std::uint64_t row_limit = 4'000'000;
  /// Auto: exact fallback allowed when p^n is at most this.
  std::uint64_t exact_fallback_limit = 512;
};

struct HeightResult {
  HeightOutcome outcome = HeightOutcome::UnknownBeyond;
  unsigned height = 0;             // Finite(m)
  Certificate certificate = Certificate::None;
  unsigned stabilized_at = 0;      // Stabilized(at m)
  unsigned examined = 0;           // highest level fully decided
  HeightMethod method = HeightMethod::Exact;
  std::vector<LevelTrace> trace;
  std::string note;

  /// "m", "infinity" or ">m".
  std::string label() const;
};

HeightResult qfp_height(const Polynomial& f, const HeightOptions& opts = {});
HeightResult qfp_height_exact(const Delta1Context& ctx, const HeightOptions& opts);
/// Requires f quasi-homogeneous.
HeightResult qfp_height_graded(const Delta1Context& ctx, const Grading& grading, const HeightOptions& opts);

}  // namespace qfp

#endif  // QFP_QFP_HPP
