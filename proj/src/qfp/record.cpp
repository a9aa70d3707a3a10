#include "qfp/record.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "qfp/classify.hpp"
#include "qfp/error.hpp"

namespace qfp {

std::string to_string(const Fraction& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Fraction parse_fraction(std::string_view s) {
  auto num = [&](std::string_view t) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) throw ArgumentError("bad fraction '" + std::string(s) + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Fraction(num(s));
  const std::int64_t den = num(s.substr(slash + 1));
  if (den == 0) throw ArgumentError("zero denominator in '" + std::string(s) + "'");
  return Fraction(num(s.substr(0, slash)), den);
}

std::vector<std::string> infer_variables(std::string_view text) {
  int max_index = 0;
  int letters = 0;
  const std::string order = "xyzw";
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const auto pos = order.find(c);
    if (pos == std::string::npos) continue;
    std::size_t j = i + 1;
    if (c == 'x' && j < text.size() && text[j] == '_') ++j;
    if (c == 'x' && j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      int v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) v = v * 10 + (text[j++] - '0');
      max_index = std::max(max_index, v);
      i = j - 1;
    } else {
      letters = std::max(letters, static_cast<int>(pos) + 1);
    }
  }
  if (max_index > 0 && letters > 0) throw ArgumentError("mixed x1.. and x,y,z,w names; pass the variables explicitly");
  if (max_index > kMaxVars) throw RangeError("too many variables");
  if (max_index > 0) return default_names(max_index);
  std::vector<std::string> v;
  for (int k = 0; k < std::max(letters, 1); ++k) v.emplace_back(1, order[static_cast<std::size_t>(k)]);
  return v;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Json flags_json(const FptHypotheses& h) {
  return Json{{"homogeneous", h.homogeneous},
              {"isolated_singularity", h.isolated_singularity},
              {"p_odd", h.p_odd},
              {"p_gt_n_minus_2", h.p_gt_n_minus_2},
              {"not_general_type", h.not_general_type}};
}

Json opt(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

SampleRecord analyze(const Polynomial& f, const AnalysisOptions& opts) {
  if (opts.emax == 0) throw ArgumentError("emax must be positive");
  const auto t0 = Clock::now();
  SampleRecord r;
  r.input = f.to_string();
  r.vars = f.ring().names();
  r.p = f.ring().p();
  r.n = static_cast<unsigned>(f.ring().nvars());
  r.d = f.total_degree();

  if (auto g = find_grading(f)) {
    r.quasi_homogeneous = true;
    r.weights = g->weights;
  }
  auto sing = isolated_singularity_detail(f);
  r.isolated_singularity = sing.isolated;
  r.singular_ideal = sing.ideal;

  r.emax = std::min(opts.emax, max_bracket_exponent(r.p));
  Timings tm;
  auto t = Clock::now();
  r.nu = nu_table(f, r.emax).nu;
  tm.nu_ms = ms_since(t);
  r.fedder = r.nu.front() + 1 == r.p;

  t = Clock::now();
  r.fpt = fpt_resolve(f);
  // the longer table can only tighten the bounds
  std::uint64_t q = 1;
  for (unsigned e = 1; e <= r.emax; ++e) {
    q *= r.p;
    const auto v = static_cast<std::int64_t>(r.nu[e - 1]);
    r.fpt.lower = std::max(r.fpt.lower, Fraction(v, static_cast<std::int64_t>(q)));
    r.fpt.upper = std::min(r.fpt.upper, Fraction(v + 1, static_cast<std::int64_t>(q)));
  }
  tm.fpt_ms = ms_since(t);

  r.cutoff = opts.height.cutoff;
  r.method = opts.height.method;
  t = Clock::now();
  r.height = qfp_height(f, opts.height);
  tm.height_ms = ms_since(t);
  tm.total_ms = ms_since(t0);
  if (opts.timings) r.timings = tm;
  return r;
}

Json to_json(const SampleRecord& r) {
  Json j;
  j["input"] = r.input;
  j["vars"] = r.vars;
  j["p"] = r.p;
  j["n"] = r.n;
  j["d"] = r.d;
  j["seed"] = opt(r.seed);
  j["index"] = opt(r.index);
  j["attempt"] = opt(r.attempt);
  j["quasi_homogeneous"] = r.quasi_homogeneous;
  j["weights"] = r.weights;
  j["isolated_singularity"] = r.isolated_singularity;
  j["singular_ideal"] = r.singular_ideal;
  j["emax"] = r.emax;
  j["nu"] = r.nu;
  j["fedder"] = r.fedder;
  j["fpt"] = Json{{"lower", to_string(r.fpt.lower)},
                  {"upper", to_string(r.fpt.upper)},
                  {"exact", r.fpt.exact ? Json(to_string(*r.fpt.exact)) : Json(nullptr)},
                  {"method", to_string(r.fpt.method)},
                  {"flags", flags_json(r.fpt.flags)}};
  j["cutoff"] = r.cutoff;
  j["method"] = to_string(r.method);
  const auto& h = r.height;
  if (h.outcome == HeightOutcome::Finite) j["height"] = h.height;
  else j["height"] = h.label();
  j["certificate"] = to_string(h.certificate);
  j["stabilized_at"] = h.certificate == Certificate::Stabilized ? Json(h.stabilized_at) : Json(nullptr);
  j["height_method"] = to_string(h.method);
  j["height_note"] = h.note;
  if (r.timings) {
    j["timings_ms"] = Json{{"nu", r.timings->nu_ms},
                           {"fpt", r.timings->fpt_ms},
                           {"height", r.timings->height_ms},
                           {"total", r.timings->total_ms}};
  }
  return j;
}

std::string to_jsonl(const SampleRecord& r) { return to_json(r).dump(); }

std::vector<std::string> rerun_differences(const Json& record) {
  const auto vars = record.at("vars").get<std::vector<std::string>>();
  const auto p = record.at("p").get<std::uint32_t>();
  auto f = parse_poly(record.at("input").get<std::string>(), Prime(p), vars);
  AnalysisOptions opts;
  opts.emax = record.at("emax").get<unsigned>();
  opts.height.cutoff = record.at("cutoff").get<unsigned>();
  auto m = parse_method(record.at("method").get<std::string>());
  if (!m) throw ArgumentError("unknown method in record");
  opts.height.method = *m;
  auto again = analyze(f, opts);
  for (const char* k : {"seed", "index", "attempt"}) {
    if (record.contains(k) && !record[k].is_null()) {
      const auto v = record[k].get<std::uint64_t>();
      if (std::string(k) == "seed") again.seed = v;
      else if (std::string(k) == "index") again.index = v;
      else again.attempt = v;
    }
  }
  const Json fresh = to_json(again);
  std::vector<std::string> diff;
  // sampled records must also come back out of the generator
  if (again.seed && again.index && again.attempt) {
    auto redrawn = draw_form(p, static_cast<unsigned>(vars.size()), record.at("d").get<unsigned>(), *again.seed,
                             *again.index, *again.attempt);
    if (!(redrawn == f)) diff.push_back("draw");
  }
  for (const auto& [key, value] : record.items()) {
    if (key == "timings_ms") continue;
    if (!fresh.contains(key) || fresh[key] != value) diff.push_back(key);
  }
  for (const auto& [key, value] : fresh.items()) {
    if (!record.contains(key)) diff.push_back(key);
  }
  return diff;
}

Polynomial draw_form(std::uint32_t p, unsigned n, unsigned d, std::uint64_t seed, std::uint64_t index,
                     std::uint64_t attempt) {
  Prime prime(p);
  if (n == 0 || n > static_cast<unsigned>(kMaxVars)) throw ArgumentError("number of variables out of range");
  if (d == 0) throw ArgumentError("degree must be positive");
  Ring ring(prime, static_cast<int>(n));
  // no state shared between indices: the stream is a function of these words
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  std::vector<Term> terms;
  std::vector<std::uint32_t> e(n, 0);
  // lex order over compositions of d
  auto rec = [&](auto&& self, unsigned i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      const auto c = static_cast<std::uint32_t>(rng() % p);
      if (c) terms.push_back({make_monomial(e), c});
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return Polynomial::from_terms(ring, std::move(terms));
}

namespace {

bool accept(const Polynomial& f, const SampleOptions& o) {
  if (f.is_zero()) return false;
  if (o.homogeneous_only && !f.is_homogeneous()) return false;
  if (o.smooth_origin && !isolated_singularity(f)) return false;
  return true;
}

SampleRecord one(const SampleOptions& o, std::uint64_t index) {
  for (std::uint64_t attempt = 0; attempt < o.max_attempts; ++attempt) {
    auto f = draw_form(o.p, o.n, o.d, o.seed, index, attempt);
    if (!accept(f, o)) continue;
    auto r = analyze(f, o.analysis);
    r.seed = o.seed;
    r.index = index;
    r.attempt = attempt;
    return r;
  }
  throw RangeError("no draw passed the filters after " + std::to_string(o.max_attempts) + " attempts at index " +
                   std::to_string(index));
}

}  // namespace

void sample(const SampleOptions& o, const std::function<void(const SampleRecord&)>& sink) {
  if (o.count == 0) throw ArgumentError("count must be at least 1");
  Prime checked(o.p);
  (void)checked;
  unsigned workers = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, o.count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < o.count; ++i) sink(one(o, i));
    return;
  }

  // workers may run at most `window` indices ahead of the writer
  const std::uint64_t window = 4ull * workers;
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::uint64_t, SampleRecord> done;
  std::uint64_t next_claim = 0, next_emit = 0;
  std::exception_ptr failure;
  bool stop = false;

  auto work = [&] {
    for (;;) {
      std::uint64_t i;
      {
        std::unique_lock lk(mu);
        cv.wait(lk, [&] { return stop || next_claim >= o.count || next_claim < next_emit + window; });
        if (stop || next_claim >= o.count) return;
        i = next_claim++;
      }
      try {
        auto r = one(o, i);
        std::lock_guard lk(mu);
        done.emplace(i, std::move(r));
      } catch (...) {
        std::lock_guard lk(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

  try {
    while (next_emit < o.count) {
      SampleRecord r;
      {
        std::unique_lock lk(mu);
        cv.wait(lk, [&] { return failure || done.count(next_emit); });
        if (failure) break;
        auto it = done.find(next_emit);
        r = std::move(it->second);
        done.erase(it);
      }
      sink(r);
      {
        std::lock_guard lk(mu);
        ++next_emit;
      }
      cv.notify_all();
    }
  } catch (...) {
    std::lock_guard lk(mu);
    if (!failure) failure = std::current_exception();
    stop = true;
  }
  {
    std::lock_guard lk(mu);
    stop = true;
  }
  cv.notify_all();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qfp
