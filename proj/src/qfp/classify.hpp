#ifndef QFP_CLASSIFY_HPP
#define QFP_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qfp/frob.hpp"
#include "qfp/poly.hpp"
#include "qfp/qfp.hpp"

namespace qfp {

enum class FermatOutcome { Height1FPure, Height2, Infinite, NotFPureCase1b, OutOfScope };
/// What is known inside case (1b), where the theorem only gives a necessary condition.
enum class FermatSubAnswer { None, Unknown, Height2, Infinite };

const char* to_string(FermatOutcome o) noexcept;
const char* to_string(FermatSubAnswer s) noexcept;

struct FermatClass {
  FermatOutcome outcome = FermatOutcome::OutOfScope;
  std::string rule;
  std::optional<std::uint32_t> a;  // odd p with d < p
  FermatSubAnswer sub = FermatSubAnswer::None;
  std::string necessary_condition;  // case (1b) only
};

/// Closed-form answer for x_1^d + ... + x_n^d over F_p.
FermatClass classify_fermat(unsigned n, unsigned d, std::uint32_t p);

/// x_1^d + ... + x_n^d.
Polynomial fermat_polynomial(unsigned n, unsigned d, std::uint32_t p);

std::optional<Grading> quasi_homogeneous(const Polynomial& f);

struct SingularityReport {
  bool isolated = false;
  bool partials_only = false;  // Euler relation let f be dropped
  std::string ideal;           // "partials" or "f+partials"
};
SingularityReport isolated_singularity_detail(const Polynomial& f);
bool isolated_singularity(const Polynomial& f);

enum class Verdict { Pass, Fail, Vacuous };
const char* to_string(Verdict v) noexcept;

struct Implication {
  std::string name;
  Verdict verdict = Verdict::Vacuous;
  std::string detail;
};

struct MainTheoremReport {
  bool quasi_homogeneous = false;
  bool isolated = false;
  bool p_odd = false;
  bool p_gt_n_minus_2 = false;
  HeightResult height;
  std::uint64_t nu_p = 0;
  FptReport fpt;
  std::vector<Implication> implications;

  bool hypotheses() const noexcept { return quasi_homogeneous && isolated && p_odd && p_gt_n_minus_2; }
  bool passed() const noexcept;
};

MainTheoremReport verify_main_theorem(const Polynomial& f, unsigned cutoff, const HeightOptions& base = {});

/// #{(a_1..a_n) >= 0 : sum = D, every a_i < k}.
std::uint64_t wics_count(unsigned n, std::uint64_t D, std::uint64_t k);

/// binom(d+n-1, n-1) - n^2 + 1.
std::int64_t moduli_dimension(unsigned n, unsigned d);

struct ModuliReport {
  unsigned n = 0, d = 0;
  std::uint32_t p = 0;
  std::int64_t dimension = 0;
  std::uint64_t wics = 0;
  bool unlikely = false;  // dimension < wics count
};
ModuliReport unlikely_intersection(unsigned n, unsigned d, std::uint32_t p);

}  // namespace qfp

#endif  // QFP_CLASSIFY_HPP
