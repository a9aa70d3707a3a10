#include "support.hpp"

#include "qfp/corpus.hpp"
#include "qfp/error.hpp"

using namespace qfp;

TEST_CASE("shipped corpus passes the fast tier") {
  const auto corpus = load_corpus(QFP_TEST_CORPUS);
  REQUIRE(corpus.size() >= 40);
  const auto rep = verify_paper(corpus, Tier::Fast);
  for (const auto& c : rep.checks) {
    INFO(c.id << " " << c.fact << ": expected " << c.expected << ", observed " << c.observed);
    CHECK(c.passed);
  }
  CHECK(rep.passed());
  CHECK(rep.skipped_entries == 4);
  for (const auto& e : corpus) {
    CHECK_FALSE(e.locus.empty());
    CHECK_FALSE(e.basis.empty());
  }
}

TEST_CASE("mismatches and broken entries become failed checks") {
  const auto doc = Json::parse(R"({"entries": [
    {"id": "ok", "kind": "wics", "args": {"n": 5, "D": 24, "k": 7}, "expect": {"count": 210}},
    {"id": "wrong", "kind": "poly", "args": {"poly": "x^3+y^3+z^3", "p": 7}, "expect": {"height": 2, "fedder": true}},
    {"id": "broken", "kind": "poly", "args": {"poly": "x^^2", "p": 7}, "expect": {"fedder": true}},
    {"id": "odd", "kind": "banana", "expect": {}},
    {"id": "slow", "tier": "full", "kind": "wics", "args": {"n": 1, "D": 0, "k": 1}, "expect": {"count": 1}}
  ]})");
  const auto corpus = parse_corpus(doc);
  const auto rep = verify_paper(corpus, Tier::Fast);
  REQUIRE(rep.checks.size() == 5);
  CHECK(rep.checks[0].passed);
  CHECK_FALSE(rep.checks[1].passed);  // the cubic over F_7 is ordinary: height 1
  CHECK(rep.checks[1].observed == "1");
  CHECK(rep.checks[2].passed);
  CHECK(rep.checks[3].fact == "error");
  CHECK(rep.checks[4].fact == "error");
  CHECK(rep.failures() == 3);
  CHECK_FALSE(rep.passed());
  CHECK(rep.skipped_entries == 1);
  CHECK(verify_paper(corpus, Tier::Full).skipped_entries == 0);

  const auto j = to_json(rep);
  CHECK(j["failures"] == 3);
  CHECK(j["checks"].size() == 5);
}

TEST_CASE("corpus loading errors") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.json"), ArgumentError);
  CHECK_THROWS_AS(parse_corpus(Json::parse(R"([{"id": "t", "tier": "weekly", "kind": "wics", "expect": {}}])")),
                  ArgumentError);
  CHECK(verify_paper({}, Tier::Full).passed() == false);
}
