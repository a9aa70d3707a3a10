#ifndef QFP_RECORD_HPP
#define QFP_RECORD_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfp/frob.hpp"
#include "qfp/qfp.hpp"

namespace qfp {

using Json = nlohmann::ordered_json;

std::string to_string(const Fraction& q);
/// "a/b" or "a".
Fraction parse_fraction(std::string_view s);

/// Variable names for text with no declared list: x1..xn when indexed names
/// occur, otherwise the shortest prefix of x, y, z, w covering the letters used.
std::vector<std::string> infer_variables(std::string_view text);

struct AnalysisOptions {
  unsigned emax = 2;
  HeightOptions height;
  bool timings = false;  // wall-clock fields make output nondeterministic
};

struct Timings {
  double nu_ms = 0, fpt_ms = 0, height_ms = 0, total_ms = 0;
};

/// Everything computed for one polynomial. Self-contained: the input text,
/// variables, p and analysis options are enough to reproduce it.
struct SampleRecord {
  std::string input;
  std::vector<std::string> vars;
  std::uint32_t p = 0;
  unsigned n = 0;
  unsigned d = 0;  // total degree
  std::optional<std::uint64_t> seed, index, attempt;

  bool quasi_homogeneous = false;
  std::vector<std::uint32_t> weights;
  bool isolated_singularity = false;
  std::string singular_ideal;

  unsigned emax = 0;
  std::vector<std::uint64_t> nu;
  FptReport fpt;
  bool fedder = false;

  unsigned cutoff = 0;
  HeightMethod method = HeightMethod::Auto;
  HeightResult height;

  std::optional<Timings> timings;
};

SampleRecord analyze(const Polynomial& f, const AnalysisOptions& opts);

Json to_json(const SampleRecord& r);
/// One compact JSON line, no trailing newline.
std::string to_jsonl(const SampleRecord& r);

/// Recomputes a serialized record from its own fields and lists the keys
/// whose values differ (timings and sampler provenance ignored).
std::vector<std::string> rerun_differences(const Json& record);

struct SampleOptions {
  std::uint32_t p = 5;
  unsigned n = 3;
  unsigned d = 3;
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  bool smooth_origin = false;     // keep only isolated singularities
  bool homogeneous_only = false;  // keep only standard-graded draws
  unsigned threads = 0;           // 0: hardware concurrency
  unsigned max_attempts = 1000;   // redraws per index before giving up
  AnalysisOptions analysis;
};

/// Dense degree-d form whose coefficients depend only on (seed, index, attempt).
Polynomial draw_form(std::uint32_t p, unsigned n, unsigned d, std::uint64_t seed, std::uint64_t index,
                     std::uint64_t attempt);

/// Calls `sink` once per index, in index order, from the calling thread.
void sample(const SampleOptions& opts, const std::function<void(const SampleRecord&)>& sink);

}  // namespace qfp

#endif  // QFP_RECORD_HPP
