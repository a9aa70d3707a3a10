#include "qfp/corpus.hpp"

#include <chrono>
#include <fstream>

#include "qfp/classify.hpp"
#include "qfp/error.hpp"

namespace qfp {

const char* to_string(Tier t) noexcept { return t == Tier::Fast ? "fast" : "full"; }

std::size_t VerifyReport::failures() const noexcept {
  std::size_t n = 0;
  for (const auto& c : checks) n += !c.passed;
  return n;
}

std::vector<CorpusEntry> parse_corpus(const Json& doc) {
  const Json& list = doc.is_object() ? doc.at("entries") : doc;
  std::vector<CorpusEntry> out;
  for (const auto& e : list) {
    CorpusEntry c;
    c.id = e.at("id").get<std::string>();
    const auto tier = e.value("tier", std::string("fast"));
    if (tier != "fast" && tier != "full") throw ArgumentError("entry " + c.id + ": unknown tier " + tier);
    c.tier = tier == "fast" ? Tier::Fast : Tier::Full;
    c.kind = e.at("kind").get<std::string>();
    c.args = e.value("args", Json::object());
    c.expect = e.at("expect");
    c.locus = e.value("locus", std::string());
    c.basis = e.value("basis", std::string());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open corpus file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ArgumentError("corpus file " + path + ": " + e.what());
  }
  return parse_corpus(doc);
}

namespace {

std::string show(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

HeightOptions height_options(const Json& args) {
  HeightOptions o;
  o.cutoff = args.value("cutoff", 4u);
  if (args.contains("method")) {
    auto m = parse_method(args["method"].get<std::string>());
    if (!m) throw ArgumentError("unknown height method");
    o.method = *m;
  }
  return o;
}

std::string height_text(const HeightResult& h) {
  std::string s = h.label();
  if (h.certificate == Certificate::Stabilized) s += " (stabilized at " + std::to_string(h.stabilized_at) + ")";
  else if (h.certificate != Certificate::None) s += std::string(" (") + to_string(h.certificate) + ")";
  return s;
}

bool height_matches(const Json& want, const HeightResult& h) {
  if (want.is_number_unsigned() || want.is_number_integer())
    return h.outcome == HeightOutcome::Finite && h.height == want.get<unsigned>();
  const auto w = want.get<std::string>();
  if (w == "infinity") return h.outcome == HeightOutcome::Infinite;
  if (w == "not-finite") return h.outcome != HeightOutcome::Finite;
  throw ArgumentError("unknown height expectation " + w);
}

struct Checker {
  const CorpusEntry& entry;
  std::vector<CheckOutcome>& out;

  void add(const std::string& fact, const Json& want, const std::string& got, bool ok) {
    out.push_back({entry.id, fact, show(want), got, ok, entry.locus, entry.basis});
  }
};

void run_poly(const CorpusEntry& e, Checker& ck) {
  const auto& a = e.args;
  const auto text = a.at("poly").get<std::string>();
  const Prime p(a.at("p").get<std::uint32_t>());
  const auto vars = a.contains("vars") ? a["vars"].get<std::vector<std::string>>() : infer_variables(text);
  const auto f = parse_poly(text, p, vars);
  for (const auto& [fact, want] : e.expect.items()) {
    if (fact == "nu") {
      const auto v = want.get<std::vector<std::uint64_t>>();
      const auto t = nu_table(f, static_cast<unsigned>(v.size()));
      ck.add(fact, want, Json(t.nu).dump(), t.nu == v);
    } else if (fact == "fpt") {
      const auto r = fpt_resolve(f);
      const auto target = parse_fraction(want.get<std::string>());
      const std::string got = r.exact ? to_string(*r.exact)
                                      : "[" + to_string(r.lower) + ", " + to_string(r.upper) + "] " + r.note;
      ck.add(fact, want, got, r.exact && *r.exact == target);
    } else if (fact == "fedder") {
      const bool got = fedder_f_pure(f);
      ck.add(fact, want, got ? "true" : "false", got == want.get<bool>());
    } else if (fact == "height") {
      const auto h = qfp_height(f, height_options(a));
      ck.add(fact, want, height_text(h), height_matches(want, h));
    } else if (fact == "certificate") {
      const auto c = not_qfp_certificate(f);
      ck.add(fact, want, to_string(c), want.get<std::string>() == to_string(c));
    } else if (fact == "isolated") {
      const bool got = isolated_singularity(f);
      ck.add(fact, want, got ? "true" : "false", got == want.get<bool>());
    } else {
      throw ArgumentError("unknown fact " + fact);
    }
  }
}

void run_fermat(const CorpusEntry& e, Checker& ck) {
  const auto& a = e.args;
  const auto n = a.at("n").get<unsigned>();
  const auto d = a.at("d").get<unsigned>();
  const auto p = a.at("p").get<std::uint32_t>();
  for (const auto& [fact, want] : e.expect.items()) {
    if (fact == "class") {
      const auto c = classify_fermat(n, d, p);
      ck.add(fact, want, to_string(c.outcome), want.get<std::string>() == to_string(c.outcome));
    } else if (fact == "sub") {
      const auto c = classify_fermat(n, d, p);
      ck.add(fact, want, to_string(c.sub), want.get<std::string>() == to_string(c.sub));
    } else if (fact == "height") {
      const auto h = qfp_height(fermat_polynomial(n, d, p), height_options(a));
      ck.add(fact, want, height_text(h), height_matches(want, h));
    } else {
      throw ArgumentError("unknown fact " + fact);
    }
  }
}

void run_wics(const CorpusEntry& e, Checker& ck) {
  const auto& a = e.args;
  const auto got = wics_count(a.at("n").get<unsigned>(), a.at("D").get<std::uint64_t>(), a.at("k").get<std::uint64_t>());
  for (const auto& [fact, want] : e.expect.items()) {
    if (fact != "count") throw ArgumentError("unknown fact " + fact);
    ck.add(fact, want, std::to_string(got), got == want.get<std::uint64_t>());
  }
}

void run_moduli(const CorpusEntry& e, Checker& ck) {
  const auto& a = e.args;
  const auto n = a.at("n").get<unsigned>();
  const auto d = a.at("d").get<unsigned>();
  for (const auto& [fact, want] : e.expect.items()) {
    if (fact == "dimension") {
      const auto got = moduli_dimension(n, d);
      ck.add(fact, want, std::to_string(got), got == want.get<std::int64_t>());
      continue;
    }
    const auto r = unlikely_intersection(n, d, a.at("p").get<std::uint32_t>());
    if (fact == "wics") ck.add(fact, want, std::to_string(r.wics), r.wics == want.get<std::uint64_t>());
    else if (fact == "unlikely") ck.add(fact, want, r.unlikely ? "true" : "false", r.unlikely == want.get<bool>());
    else throw ArgumentError("unknown fact " + fact);
  }
}

}  // namespace

VerifyReport verify_paper(const std::vector<CorpusEntry>& corpus, Tier tier) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.tier = tier;
  for (const auto& e : corpus) {
    if (e.tier == Tier::Full && tier == Tier::Fast) {
      ++rep.skipped_entries;
      continue;
    }
    Checker ck{e, rep.checks};
    try {
      if (e.kind == "poly") run_poly(e, ck);
      else if (e.kind == "fermat") run_fermat(e, ck);
      else if (e.kind == "wics") run_wics(e, ck);
      else if (e.kind == "moduli") run_moduli(e, ck);
      else throw ArgumentError("unknown entry kind " + e.kind);
    } catch (const std::exception& ex) {
      ck.add("error", Json("no error"), ex.what(), false);
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Json to_json(const VerifyReport& r) {
  Json j;
  j["tier"] = to_string(r.tier);
  j["passed"] = r.passed();
  j["failures"] = r.failures();
  j["skipped_entries"] = r.skipped_entries;
  j["seconds"] = r.seconds;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"id", c.id},
                          {"fact", c.fact},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"passed", c.passed},
                          {"locus", c.locus},
                          {"basis", c.basis}});
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace qfp
