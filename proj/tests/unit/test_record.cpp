#include "support.hpp"

#include "qfp/classify.hpp"
#include "qfp/error.hpp"
#include "qfp/record.hpp"

using namespace qfp;

namespace {

std::vector<std::string> run(SampleOptions o) {
  std::vector<std::string> lines;
  sample(o, [&](const SampleRecord& r) { lines.push_back(to_jsonl(r)); });
  return lines;
}

}  // namespace

TEST_CASE("fractions and variable inference") {
  CHECK(parse_fraction("4/5") == Fraction(4, 5));
  CHECK(parse_fraction("1") == Fraction(1));
  CHECK(to_string(Fraction(6, 7)) == "6/7");
  CHECK(to_string(Fraction(2, 2)) == "1");
  CHECK_THROWS_AS(parse_fraction("1/0"), ArgumentError);
  CHECK_THROWS_AS(parse_fraction("x"), ArgumentError);

  CHECK(infer_variables("x^3+y^3") == std::vector<std::string>{"x", "y"});
  CHECK(infer_variables("z^2") == std::vector<std::string>{"x", "y", "z"});
  CHECK(infer_variables("x1^4 + x_3") == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK_THROWS_AS(infer_variables("x1 + y"), ArgumentError);
}

TEST_CASE("draws depend only on (seed, index, attempt)") {
  const auto a = draw_form(7, 3, 4, 99, 5, 0);
  CHECK(a == draw_form(7, 3, 4, 99, 5, 0));
  CHECK_FALSE(a == draw_form(7, 3, 4, 99, 6, 0));
  CHECK_FALSE(a == draw_form(7, 3, 4, 99, 5, 1));
  CHECK_FALSE(a == draw_form(7, 3, 4, 100, 5, 0));
  CHECK(a.is_homogeneous());
  CHECK(a.total_degree() == 4);
  CHECK_THROWS_AS(draw_form(7, 0, 4, 1, 0, 0), ArgumentError);
  CHECK_THROWS_AS(draw_form(7, 3, 0, 1, 0, 0), ArgumentError);
  CHECK_THROWS_AS(draw_form(8, 3, 2, 1, 0, 0), ArgumentError);
}

TEST_CASE("sampler output is independent of the thread count") {
  SampleOptions o;
  o.p = 5;
  o.n = 3;
  o.d = 3;
  o.count = 24;
  o.seed = 17;
  o.threads = 1;
  const auto serial = run(o);
  o.threads = 4;
  CHECK(run(o) == serial);
  o.threads = 0;
  CHECK(run(o) == serial);
  REQUIRE(serial.size() == 24);
  // index order
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(Json::parse(serial[i])["index"] == i);
  // a prefix of a longer run
  o.count = 30;
  auto longer = run(o);
  CHECK(std::equal(serial.begin(), serial.end(), longer.begin()));
}

TEST_CASE("filters redraw with the next attempt") {
  SampleOptions o;
  o.p = 5;
  o.n = 3;
  o.d = 3;
  o.count = 20;
  o.seed = 3;
  o.threads = 2;
  o.smooth_origin = true;
  bool redrawn = false;
  sample(o, [&](const SampleRecord& r) {
    CHECK(r.isolated_singularity);
    redrawn = redrawn || *r.attempt > 0;
    // the kept draw is the first passing one
    for (std::uint64_t a = 0; a < *r.attempt; ++a) {
      CHECK_FALSE(isolated_singularity(draw_form(o.p, o.n, o.d, o.seed, *r.index, a)));
    }
  });
  CHECK(redrawn);

  // one attempt and a first draw that fails the filter
  SampleOptions bad = o;
  bad.max_attempts = 1;
  bad.count = 1;
  while (isolated_singularity(draw_form(bad.p, bad.n, bad.d, bad.seed, bad.count - 1, 0))) ++bad.count;
  CHECK_THROWS_AS(sample(bad, [](const SampleRecord&) {}), RangeError);
  bad.count = 0;
  CHECK_THROWS_AS(sample(bad, [](const SampleRecord&) {}), ArgumentError);
}

TEST_CASE("records rerun to the same values") {
  SampleOptions o;
  o.p = 7;
  o.n = 3;
  o.d = 4;
  o.count = 6;
  o.seed = 5;
  for (const auto& line : run(o)) CHECK(rerun_differences(Json::parse(line)).empty());

  auto j = Json::parse(run(o).front());
  j["nu"][0] = 0;
  CHECK(rerun_differences(j) == std::vector<std::string>{"nu"});
  auto k = Json::parse(run(o).front());
  k["index"] = 1;
  CHECK(rerun_differences(k) == std::vector<std::string>{"draw"});
}

TEST_CASE("record fields") {
  const auto f = parse_poly("x^3+y^3+z^3", Prime(5), {"x", "y", "z"});
  const auto r = analyze(f, {});
  const auto j = to_json(r);
  CHECK(j["p"] == 5);
  CHECK(j["nu"] == Json::array({3, 19}));
  CHECK(j["fpt"]["exact"] == "4/5");
  CHECK(j["height"] == 2);
  CHECK(j["fedder"] == false);
  CHECK(j["isolated_singularity"] == true);
  CHECK_FALSE(j.contains("timings_ms"));
  CHECK(j["seed"].is_null());

  AnalysisOptions timed;
  timed.timings = true;
  CHECK(to_json(analyze(f, timed)).contains("timings_ms"));

  const auto g = parse_poly("x^3+y^3", Prime(2), {"x", "y"});
  CHECK(to_json(analyze(g, {}))["height"] == "infinity");

  AnalysisOptions shallow;
  shallow.height.cutoff = 1;
  shallow.height.certificates = false;
  CHECK(to_json(analyze(parse_poly("x^3+y^3+z^3", Prime(2), {"x", "y", "z"}), shallow))["height"] == ">1");
}
