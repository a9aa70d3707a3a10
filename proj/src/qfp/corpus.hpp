#ifndef QFP_CORPUS_HPP
#define QFP_CORPUS_HPP

#include <string>
#include <vector>

#include "qfp/record.hpp"

namespace qfp {

enum class Tier { Fast, Full };
const char* to_string(Tier t) noexcept;

/// One worked example with the facts it is expected to show.
///   kind "poly":   poly, p, vars; expect nu, fpt, fedder, height, certificate, isolated
///   kind "fermat": n, d, p; expect class, sub, height (engine on x_1^d + ... + x_n^d)
///   kind "wics":   n, D, k; expect count
///   kind "moduli": n, d, optional p; expect dimension, wics, unlikely
struct CorpusEntry {
  std::string id;
  Tier tier = Tier::Fast;
  std::string kind;
  Json args;
  Json expect;
  std::string locus;  // short quote of where the fact comes from
  std::string basis;  // why the expected value is trusted
};

std::vector<CorpusEntry> load_corpus(const std::string& path);
std::vector<CorpusEntry> parse_corpus(const Json& doc);

struct CheckOutcome {
  std::string id;
  std::string fact;
  std::string expected;
  std::string observed;
  bool passed = false;
  std::string locus;
  std::string basis;
};

struct VerifyReport {
  Tier tier = Tier::Fast;
  std::vector<CheckOutcome> checks;
  std::size_t skipped_entries = 0;  // entries above the requested tier
  double seconds = 0;

  std::size_t failures() const noexcept;
  bool passed() const noexcept { return failures() == 0 && !checks.empty(); }
};

/// Runs every entry at or below `tier`. Errors inside an entry become failed checks.
VerifyReport verify_paper(const std::vector<CorpusEntry>& corpus, Tier tier);

Json to_json(const VerifyReport& r);

}  // namespace qfp

#endif  // QFP_CORPUS_HPP
