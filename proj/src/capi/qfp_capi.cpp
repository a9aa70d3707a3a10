#include "qfp/qfp.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include "qfp/classify.hpp"
#include "qfp/corpus.hpp"
#include "qfp/error.hpp"
#include "qfp/record.hpp"

#ifndef QFP_CORPUS_PATH
#define QFP_CORPUS_PATH "data/paper_corpus.json"
#endif

struct qfp_poly {
  qfp::Polynomial f;
};

struct qfp_report {
  std::string json;
  int ok = 1;
  std::optional<qfp::HeightResult> height;
};

namespace {

thread_local std::string last_error;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
qfp_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return QFP_OK;
  } catch (const IoError& e) {
    last_error = e.what();
    return QFP_ERR_IO;
  } catch (const qfp::ParseError& e) {
    last_error = e.what();
    return QFP_ERR_PARSE;
  } catch (const qfp::RangeError& e) {
    last_error = e.what();
    return QFP_ERR_RANGE;
  } catch (const qfp::ArgumentError& e) {
    last_error = e.what();
    return QFP_ERR_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return QFP_ERR_ARGUMENT;
  } catch (const qfp::InvariantError& e) {
    last_error = std::string("internal: ") + e.what();
    return QFP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QFP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return QFP_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw qfp::ArgumentError(std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_vars(const char* vars) {
  std::vector<std::string> out;
  std::string cur;
  for (const char* c = vars; *c; ++c) {
    if (*c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (*c != ' ') {
      cur += *c;
    }
  }
  out.push_back(cur);
  for (const auto& v : out) {
    if (v.empty()) throw qfp::ArgumentError("empty variable name in --vars");
  }
  return out;
}

qfp::HeightOptions convert(const qfp_height_options* o) {
  qfp::HeightOptions h;
  if (!o) return h;
  h.cutoff = o->cutoff;
  switch (o->method) {
    case QFP_METHOD_AUTO: h.method = qfp::HeightMethod::Auto; break;
    case QFP_METHOD_EXACT: h.method = qfp::HeightMethod::Exact; break;
    case QFP_METHOD_GRADED: h.method = qfp::HeightMethod::Graded; break;
    default: throw qfp::ArgumentError("unknown height method");
  }
  h.certificates = o->certificates != 0;
  if (o->window_cap) h.window_cap = o->window_cap;
  if (o->row_limit) h.row_limit = o->row_limit;
  return h;
}

qfp_certificate convert(qfp::Certificate c) {
  switch (c) {
    case qfp::Certificate::None: return QFP_CERT_NONE;
    case qfp::Certificate::CertA: return QFP_CERT_A;
    case qfp::Certificate::CertB: return QFP_CERT_B;
    case qfp::Certificate::Stabilized: return QFP_CERT_STABILIZED;
  }
  return QFP_CERT_NONE;
}

qfp_report* make_report(const qfp::Json& j, int ok) {
  auto* r = new qfp_report;
  r->json = j.dump();
  r->ok = ok;
  return r;
}

qfp::Json height_json(const qfp::HeightResult& h) {
  qfp::Json trace = qfp::Json::array();
  for (const auto& t : h.trace)
    trace.push_back(qfp::Json{{"level", t.level}, {"generators", t.generators}, {"max_degree", t.max_degree}});
  qfp::Json j;
  j["outcome"] = qfp::to_string(h.outcome);
  if (h.outcome == qfp::HeightOutcome::Finite) j["height"] = h.height;
  else j["height"] = h.label();
  j["certificate"] = qfp::to_string(h.certificate);
  j["stabilized_at"] = h.certificate == qfp::Certificate::Stabilized ? qfp::Json(h.stabilized_at) : qfp::Json(nullptr);
  j["examined"] = h.examined;
  j["method"] = qfp::to_string(h.method);
  j["note"] = h.note;
  j["trace"] = std::move(trace);
  return j;
}

}  // namespace

extern "C" {

const char* qfp_version(void) { return "1.0.0"; }

const char* qfp_last_error(void) { return last_error.c_str(); }

const char* qfp_status_name(qfp_status s) {
  switch (s) {
    case QFP_OK: return "ok";
    case QFP_ERR_ARGUMENT: return "argument error";
    case QFP_ERR_PARSE: return "parse error";
    case QFP_ERR_RANGE: return "range error";
    case QFP_ERR_IO: return "i/o error";
    case QFP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qfp_string_free(char* s) { std::free(s); }

void qfp_height_options_init(qfp_height_options* o) {
  if (!o) return;
  qfp::HeightOptions d;
  o->cutoff = d.cutoff;
  o->method = QFP_METHOD_AUTO;
  o->certificates = 1;
  o->window_cap = 0;
  o->row_limit = 0;
}

void qfp_sample_options_init(qfp_sample_options* o) {
  if (!o) return;
  qfp::SampleOptions d;
  o->p = d.p;
  o->n = d.n;
  o->d = d.d;
  o->count = d.count;
  o->seed = d.seed;
  o->smooth_origin = 0;
  o->homogeneous_only = 0;
  o->threads = 0;
  o->emax = d.analysis.emax;
  o->timings = 0;
  qfp_height_options_init(&o->height);
}

qfp_status qfp_poly_parse(const char* text, uint32_t p, const char* vars, qfp_poly** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    const auto names = vars && *vars ? split_vars(vars) : qfp::infer_variables(text);
    *out = new qfp_poly{qfp::parse_poly(text, qfp::Prime(p), names)};
  });
}

qfp_status qfp_poly_fermat(unsigned n, unsigned d, uint32_t p, qfp_poly** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new qfp_poly{qfp::fermat_polynomial(n, d, p)};
  });
}

void qfp_poly_free(qfp_poly* f) { delete f; }

qfp_status qfp_poly_to_string(const qfp_poly* f, char** out) {
  return guard([&] {
    need(f, "poly");
    need(out, "out");
    *out = dup(f->f.to_string());
  });
}

qfp_status qfp_poly_info(const qfp_poly* f, uint32_t* p, unsigned* nvars, unsigned* degree) {
  return guard([&] {
    need(f, "poly");
    if (p) *p = f->f.ring().p();
    if (nvars) *nvars = static_cast<unsigned>(f->f.ring().nvars());
    if (degree) *degree = f->f.total_degree();
  });
}

qfp_status qfp_nu(const qfp_poly* f, unsigned e, uint64_t* out) {
  return guard([&] {
    need(f, "poly");
    need(out, "out");
    *out = qfp::nu(f->f, e);
  });
}

qfp_status qfp_fedder(const qfp_poly* f, int* f_pure) {
  return guard([&] {
    need(f, "poly");
    need(f_pure, "out");
    *f_pure = qfp::fedder_f_pure(f->f) ? 1 : 0;
  });
}

qfp_status qfp_delta1(const qfp_poly* f, qfp_poly** out) {
  return guard([&] {
    need(f, "poly");
    need(out, "out");
    *out = nullptr;
    *out = new qfp_poly{qfp::delta1(f->f)};
  });
}

qfp_status qfp_certify(const qfp_poly* f, qfp_certificate* out) {
  return guard([&] {
    need(f, "poly");
    need(out, "out");
    *out = convert(qfp::not_qfp_certificate(f->f));
  });
}

qfp_status qfp_wics(unsigned n, uint64_t D, uint64_t k, uint64_t* out) {
  return guard([&] {
    need(out, "out");
    *out = qfp::wics_count(n, D, k);
  });
}

qfp_status qfp_fpt(const qfp_poly* f, unsigned emax, qfp_report** out) {
  return guard([&] {
    need(f, "poly");
    need(out, "out");
    *out = nullptr;
    if (emax == 0) throw qfp::ArgumentError("emax must be positive");
    const unsigned e = std::min(emax, qfp::max_bracket_exponent(f->f.ring().p()));
    if (e < emax) throw qfp::RangeError("emax exceeds the supported range " + std::to_string(e) + " for this p");
    auto b = qfp::fpt_bounds(f->f, e);
    auto r = qfp::fpt_resolve(f->f);
    qfp::Json j;
    j["nu"] = b.table.nu;
    j["lower"] = qfp::to_string(std::max(b.lower, r.lower));
    j["upper"] = qfp::to_string(std::min(b.upper, r.upper));
    j["exact"] = r.exact ? qfp::Json(qfp::to_string(*r.exact)) : qfp::Json(nullptr);
    j["method"] = qfp::to_string(r.method);
    j["f_pure"] = r.f_pure;
    j["note"] = r.note;
    j["flags"] = qfp::Json{{"homogeneous", r.flags.homogeneous},
                           {"isolated_singularity", r.flags.isolated_singularity},
                           {"p_odd", r.flags.p_odd},
                           {"p_gt_n_minus_2", r.flags.p_gt_n_minus_2},
                           {"not_general_type", r.flags.not_general_type}};
    *out = make_report(j, r.exact ? 1 : 0);
  });
}

qfp_status qfp_height(const qfp_poly* f, const qfp_height_options* o, qfp_report** out) {
  return guard([&] {
    need(f, "poly");
    need(out, "out");
    *out = nullptr;
    auto h = qfp::qfp_height(f->f, convert(o));
    auto* r = make_report(height_json(h), h.outcome == qfp::HeightOutcome::Finite);
    r->height = std::move(h);
    *out = r;
  });
}

qfp_status qfp_classify_fermat(unsigned n, unsigned d, uint32_t p, qfp_report** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    qfp::Prime checked(p);
    auto c = qfp::classify_fermat(n, d, checked.value());
    qfp::Json j;
    j["n"] = n;
    j["d"] = d;
    j["p"] = p;
    j["outcome"] = qfp::to_string(c.outcome);
    j["rule"] = c.rule;
    j["a"] = c.a ? qfp::Json(*c.a) : qfp::Json(nullptr);
    j["sub"] = qfp::to_string(c.sub);
    j["necessary_condition"] = c.necessary_condition;
    *out = make_report(j, c.outcome != qfp::FermatOutcome::OutOfScope);
  });
}

qfp_status qfp_moduli(unsigned n, unsigned d, uint32_t p, qfp_report** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    qfp::Json j;
    j["n"] = n;
    j["d"] = d;
    j["dimension"] = qfp::moduli_dimension(n, d);
    int ok = 1;
    if (p) {
      auto m = qfp::unlikely_intersection(n, d, p);
      j["p"] = p;
      j["wics"] = m.wics;
      j["unlikely"] = m.unlikely;
      ok = m.unlikely;
    }
    *out = make_report(j, ok);
  });
}

qfp_status qfp_analyze(const qfp_poly* f, unsigned emax, const qfp_height_options* o, qfp_report** out) {
  return guard([&] {
    need(f, "poly");
    need(out, "out");
    *out = nullptr;
    qfp::AnalysisOptions a;
    a.emax = emax ? emax : a.emax;
    a.height = convert(o);
    auto rec = qfp::analyze(f->f, a);
    *out = make_report(qfp::to_json(rec), 1);
  });
}

qfp_status qfp_rerun(const char* json_line, qfp_report** out) {
  return guard([&] {
    need(json_line, "json_line");
    need(out, "out");
    *out = nullptr;
    auto diff = qfp::rerun_differences(qfp::Json::parse(json_line));
    *out = make_report(qfp::Json{{"differences", diff}}, diff.empty());
  });
}

qfp_status qfp_sample(const qfp_sample_options* o, qfp_record_sink sink, void* user) {
  bool aborted = false;
  const auto st = guard([&] {
    need(o, "options");
    need(reinterpret_cast<const void*>(sink), "sink");
    qfp::SampleOptions s;
    s.p = o->p;
    s.n = o->n;
    s.d = o->d;
    s.count = o->count;
    s.seed = o->seed;
    s.smooth_origin = o->smooth_origin != 0;
    s.homogeneous_only = o->homogeneous_only != 0;
    s.threads = o->threads;
    s.analysis.emax = o->emax ? o->emax : s.analysis.emax;
    s.analysis.timings = o->timings != 0;
    s.analysis.height = convert(&o->height);
    struct Abort {};
    try {
      qfp::sample(s, [&](const qfp::SampleRecord& r) {
        if (sink(qfp::to_jsonl(r).c_str(), user) != 0) throw Abort{};
      });
    } catch (const Abort&) {
      aborted = true;
    }
  });
  if (st == QFP_OK && aborted) {
    last_error = "record sink aborted the run";
    return QFP_ERR_IO;
  }
  return st;
}

qfp_status qfp_verify_paper(const char* corpus_path, int full, qfp_report** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    std::string path = corpus_path && *corpus_path ? corpus_path : "";
    if (path.empty()) {
      const char* env = std::getenv("QFP_CORPUS");
      path = env && *env ? env : QFP_CORPUS_PATH;
    }
    if (!std::ifstream(path)) throw IoError("cannot read corpus file " + path);
    auto corpus = qfp::load_corpus(path);
    auto rep = qfp::verify_paper(corpus, full ? qfp::Tier::Full : qfp::Tier::Fast);
    *out = make_report(qfp::to_json(rep), rep.passed());
  });
}

void qfp_report_free(qfp_report* r) { delete r; }

const char* qfp_report_json(const qfp_report* r) { return r ? r->json.c_str() : ""; }

int qfp_report_ok(const qfp_report* r) { return r ? r->ok : 0; }

qfp_status qfp_report_height(const qfp_report* r, qfp_outcome* outcome, unsigned* height, qfp_certificate* cert) {
  return guard([&] {
    need(r, "report");
    if (!r->height) throw qfp::ArgumentError("not a height report");
    const auto& h = *r->height;
    if (outcome) {
      *outcome = h.outcome == qfp::HeightOutcome::Finite     ? QFP_HEIGHT_FINITE
                 : h.outcome == qfp::HeightOutcome::Infinite ? QFP_HEIGHT_INFINITE
                                                             : QFP_HEIGHT_UNKNOWN;
    }
    if (height) *height = h.outcome == qfp::HeightOutcome::Finite ? h.height : h.examined;
    if (cert) *cert = convert(h.certificate);
  });
}

}  // extern "C"
