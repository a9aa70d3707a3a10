// qfp-cli: thin front end over the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "qfp/qfp.h"

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Failure {
  int code;
  std::string message;
};

void check(qfp_status s) {
  if (s == QFP_OK) return;
  const int code = s == QFP_ERR_INTERNAL ? kFail : kUsage;
  throw Failure{code, std::string(qfp_status_name(s)) + ": " + qfp_last_error()};
}

struct PolyDeleter {
  void operator()(qfp_poly* f) const { qfp_poly_free(f); }
};
struct ReportDeleter {
  void operator()(qfp_report* r) const { qfp_report_free(r); }
};
using Poly = std::unique_ptr<qfp_poly, PolyDeleter>;
using Report = std::unique_ptr<qfp_report, ReportDeleter>;

std::string text_of(const qfp_poly* f) {
  char* s = nullptr;
  check(qfp_poly_to_string(f, &s));
  std::string out(s);
  qfp_string_free(s);
  return out;
}

ordered_json json_of(const qfp_report* r) { return ordered_json::parse(qfp_report_json(r)); }

// options every subcommand understands
struct Common {
  std::uint32_t p = 0;
  std::string vars;
  std::string out;
  bool json = false;
};

struct Sink {
  std::optional<std::ofstream> file;

  explicit Sink(const std::string& path, std::ios::openmode mode = std::ios::app) {
    if (path.empty()) return;
    file.emplace(path, mode);
    if (!*file) throw Failure{kUsage, "cannot open " + path + " for writing"};
  }
  void line(const ordered_json& j) {
    if (file) *file << j.dump() << '\n';
  }
};

Poly parse(const std::string& text, const Common& c) {
  qfp_poly* f = nullptr;
  check(qfp_poly_parse(text.c_str(), c.p, c.vars.c_str(), &f));
  return Poly(f);
}

void emit(const Common& c, const ordered_json& j, const std::function<void()>& table) {
  Sink(c.out).line(j);
  if (c.json) std::cout << j.dump() << '\n';
  else table();
}

std::string show(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

qfp_method method_of(const std::string& m) {
  if (m == "auto") return QFP_METHOD_AUTO;
  if (m == "exact") return QFP_METHOD_EXACT;
  if (m == "graded") return QFP_METHOD_GRADED;
  throw Failure{kUsage, "--method must be auto, exact or graded"};
}

void add_common(CLI::App* sub, Common& c, bool needs_p = true) {
  auto* opt = sub->add_option("-p,--prime", c.p, "characteristic");
  if (needs_p) opt->required();
  sub->add_option("--vars", c.vars, "comma separated variable names (default: inferred)");
  sub->add_option("--out", c.out, "append results as JSON lines to this file");
  sub->add_flag("--json", c.json, "print JSON instead of a table");
}

const char* cert_name(qfp_certificate c) {
  switch (c) {
    case QFP_CERT_NONE: return "none";
    case QFP_CERT_A: return "CertA (f^(p-2) in m^[p])";
    case QFP_CERT_B: return "CertB (f^(p-1) in m^[p], f^((p+1)(p-2)) Delta_1(f) in m^[p^2])";
    case QFP_CERT_STABILIZED: return "Stabilized";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-F-purity, F-pure thresholds and Fermat classification over F_p"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qfp_version()));

  Common c;
  std::string poly;
  unsigned emax = 2;
  unsigned cutoff = 4;
  std::string method = "auto";
  bool no_certs = false;
  std::uint64_t window_cap = 0;

  auto height_flags = [&](CLI::App* s) {
    s->add_option("--cutoff", cutoff, "highest level examined")->check(CLI::PositiveNumber);
    s->add_option("--method", method, "auto, exact or graded")->check(CLI::IsMember({"auto", "exact", "graded"}));
    s->add_flag("--no-certificates", no_certs, "skip the CertA/CertB shortcuts");
    s->add_option("--window-cap", window_cap, "graded: cap on carried degrees");
  };
  auto height_options = [&] {
    qfp_height_options o;
    qfp_height_options_init(&o);
    o.cutoff = cutoff;
    o.method = method_of(method);
    o.certificates = no_certs ? 0 : 1;
    o.window_cap = window_cap;
    return o;
  };

  auto* fpt = app.add_subcommand("fpt", "nu table, threshold bounds and exact value when it resolves");
  fpt->add_option("poly", poly, "polynomial")->required();
  add_common(fpt, c);
  fpt->add_option("--emax", emax, "largest e in the nu table")->check(CLI::PositiveNumber);

  auto* nu = app.add_subcommand("nu", "nu_f(p^e) for e = 1..emax");
  nu->add_option("poly", poly, "polynomial")->required();
  add_common(nu, c);
  nu->add_option("--emax", emax, "largest e")->check(CLI::PositiveNumber);

  auto* fedder = app.add_subcommand("fedder", "F-purity by Fedder's criterion");
  fedder->add_option("poly", poly, "polynomial")->required();
  add_common(fedder, c);

  auto* height = app.add_subcommand("height", "quasi-F-pure height");
  height->add_option("poly", poly, "polynomial")->required();
  add_common(height, c);
  height_flags(height);

  auto* delta = app.add_subcommand("delta1", "Witt carry Delta_1(f)");
  delta->add_option("poly", poly, "polynomial")->required();
  add_common(delta, c);

  auto* certify = app.add_subcommand("certify", "look for a non-quasi-F-purity certificate");
  certify->add_option("poly", poly, "polynomial")->required();
  add_common(certify, c);

  unsigned n = 0, d = 0;
  std::uint64_t big_d = 0, less_than = 0;
  auto* fermat = app.add_subcommand("classify-fermat", "closed-form class of x_1^d + ... + x_n^d");
  fermat->add_option("-n", n, "number of variables")->required();
  fermat->add_option("-d", d, "degree")->required();
  add_common(fermat, c);

  auto* wics = app.add_subcommand("wics", "compositions of D into n parts, each below k");
  wics->add_option("-n", n, "parts")->required();
  wics->add_option("-d", big_d, "total D")->required();
  wics->add_option("--less-than,-k", less_than, "strict bound on each part")->required();
  wics->add_option("--out", c.out, "append results as JSON lines to this file");
  wics->add_flag("--json", c.json, "print JSON instead of a table");

  auto* moduli = app.add_subcommand("moduli", "moduli dimension against the wics count");
  moduli->add_option("-n", n, "number of variables")->required();
  moduli->add_option("-d", d, "degree")->required();
  add_common(moduli, c, false);

  qfp_sample_options so;
  qfp_sample_options_init(&so);
  bool timings = false, smooth = false, homog = false;
  auto* sample = app.add_subcommand("sample", "seeded random forms, one JSON record each");
  add_common(sample, c);
  sample->add_option("-n", so.n, "number of variables")->required();
  sample->add_option("-d", so.d, "degree")->required();
  sample->add_option("--count", so.count, "records")->check(CLI::PositiveNumber);
  sample->add_option("--seed", so.seed, "64-bit seed");
  sample->add_option("--threads", so.threads, "workers (0: one per core)");
  sample->add_option("--emax", emax, "largest e in the nu table")->check(CLI::PositiveNumber);
  sample->add_flag("--smooth-origin", smooth, "keep isolated singularities only");
  sample->add_flag("--homogeneous-only", homog, "keep standard-graded draws only");
  sample->add_flag("--timings", timings, "add wall-clock fields (breaks byte-identical reruns)");
  height_flags(sample);

  std::string rerun_path;
  auto* rerun = app.add_subcommand("rerun", "recompute every record in a JSONL file and compare");
  rerun->add_option("file", rerun_path, "records")->required()->check(CLI::ExistingFile);

  std::string tier = "fast", corpus;
  auto* verify = app.add_subcommand("verify-paper", "check the worked-example corpus");
  verify->add_option("--tier", tier, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--corpus", corpus, "corpus file (default: the shipped one)");
  verify->add_flag("--json", c.json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*fpt) {
      auto f = parse(poly, c);
      qfp_report* r = nullptr;
      check(qfp_fpt(f.get(), emax, &r));
      Report rep(r);
      auto j = json_of(r);
      j["input"] = text_of(f.get());
      emit(c, j, [&] {
        std::cout << "f      = " << j["input"].get<std::string>() << "  over F_" << c.p << '\n';
        std::uint64_t q = 1;
        std::cout << "nu     =";
        for (std::size_t e = 0; e < j["nu"].size(); ++e) {
          q *= c.p;
          std::cout << (e ? ", " : " ") << "nu(" << q << ") = " << j["nu"][e];
        }
        std::cout << "\nbounds = [" << show(j["lower"]) << ", " << show(j["upper"]) << "]\n";
        std::cout << "fpt    = " << (j["exact"].is_null() ? "unresolved" : show(j["exact"])) << "  ("
                  << show(j["method"]) << (j["note"].get<std::string>().empty() ? "" : "; " + show(j["note"]))
                  << ")\n";
      });
    } else if (*nu) {
      auto f = parse(poly, c);
      ordered_json j;
      j["input"] = text_of(f.get());
      j["p"] = c.p;
      j["nu"] = ordered_json::array();
      for (unsigned e = 1; e <= emax; ++e) {
        std::uint64_t v = 0;
        check(qfp_nu(f.get(), e, &v));
        j["nu"].push_back(v);
      }
      emit(c, j, [&] {
        std::uint64_t q = 1;
        for (unsigned e = 1; e <= emax; ++e) {
          q *= c.p;
          std::cout << "nu_f(" << q << ") = " << j["nu"][e - 1] << '\n';
        }
      });
    } else if (*fedder) {
      auto f = parse(poly, c);
      int pure = 0;
      check(qfp_fedder(f.get(), &pure));
      ordered_json j{{"input", text_of(f.get())}, {"p", c.p}, {"f_pure", pure != 0}};
      emit(c, j, [&] {
        std::cout << (pure ? "F-pure: f^(p-1) is not in m^[p]\n" : "not F-pure: f^(p-1) lies in m^[p]\n");
      });
    } else if (*height) {
      auto f = parse(poly, c);
      auto o = height_options();
      qfp_report* r = nullptr;
      check(qfp_height(f.get(), &o, &r));
      Report rep(r);
      auto j = json_of(r);
      j["input"] = text_of(f.get());
      emit(c, j, [&] {
        std::cout << "height = " << show(j["height"]) << "  (" << show(j["outcome"]) << ", method "
                  << show(j["method"]) << ")\n";
        if (show(j["certificate"]) != "none") {
          std::cout << "certificate = " << show(j["certificate"]);
          if (!j["stabilized_at"].is_null()) std::cout << " at level " << j["stabilized_at"];
          std::cout << '\n';
        }
        for (const auto& t : j["trace"])
          std::cout << "  level " << t["level"] << ": " << t["generators"] << " generators, max degree "
                    << t["max_degree"] << '\n';
        if (!j["note"].get<std::string>().empty()) std::cout << "note: " << show(j["note"]) << '\n';
      });
    } else if (*delta) {
      auto f = parse(poly, c);
      qfp_poly* g = nullptr;
      check(qfp_delta1(f.get(), &g));
      Poly dg(g);
      ordered_json j{{"input", text_of(f.get())}, {"p", c.p}, {"delta1", text_of(dg.get())}};
      emit(c, j, [&] { std::cout << show(j["delta1"]) << '\n'; });
    } else if (*certify) {
      auto f = parse(poly, c);
      qfp_certificate cert = QFP_CERT_NONE;
      check(qfp_certify(f.get(), &cert));
      const char* names[] = {"none", "CertA", "CertB", "Stabilized"};
      ordered_json j{{"input", text_of(f.get())}, {"p", c.p}, {"certificate", names[cert]}};
      emit(c, j, [&] {
        if (cert == QFP_CERT_NONE) std::cout << "no certificate (this does not show quasi-F-purity)\n";
        else std::cout << "not quasi-F-pure: " << cert_name(cert) << '\n';
      });
    } else if (*fermat) {
      qfp_report* r = nullptr;
      check(qfp_classify_fermat(n, d, c.p, &r));
      Report rep(r);
      auto j = json_of(r);
      emit(c, j, [&] {
        std::cout << show(j["outcome"]);
        if (show(j["sub"]) != "none") std::cout << " (sub-answer " << show(j["sub"]) << ")";
        std::cout << "\nrule: " << show(j["rule"]) << '\n';
        if (!j["necessary_condition"].get<std::string>().empty())
          std::cout << "necessary condition: " << show(j["necessary_condition"]) << '\n';
      });
    } else if (*wics) {
      std::uint64_t v = 0;
      check(qfp_wics(n, big_d, less_than, &v));
      ordered_json j{{"n", n}, {"D", big_d}, {"k", less_than}, {"count", v}};
      emit(c, j, [&] { std::cout << v << '\n'; });
    } else if (*moduli) {
      qfp_report* r = nullptr;
      check(qfp_moduli(n, d, c.p, &r));
      Report rep(r);
      auto j = json_of(r);
      emit(c, j, [&] {
        std::cout << "moduli dimension = " << j["dimension"] << '\n';
        if (j.contains("wics"))
          std::cout << "wics count       = " << j["wics"] << "\nunlikely         = " << j["unlikely"] << '\n';
      });
    } else if (*sample) {
      so.p = c.p;
      so.emax = emax;
      so.timings = timings;
      so.smooth_origin = smooth;
      so.homogeneous_only = homog;
      so.height = height_options();
      struct Ctx {
        Sink sink;
        bool json;
        std::uint64_t shown = 0;
      } ctx{Sink(c.out, std::ios::trunc), c.json};
      auto cb = [](const char* line, void* user) -> int {
        auto* x = static_cast<Ctx*>(user);
        if (x->sink.file) {
          *x->sink.file << line << '\n';
          if (!*x->sink.file) return 1;
        }
        if (x->json) {
          std::cout << line << '\n';
        } else {
          auto j = ordered_json::parse(line);
          std::cout << j["index"] << "\t" << show(j["height"]) << "\tfpt " << show(j["fpt"]["exact"]) << "\tnu "
                    << j["nu"].dump() << "\t" << show(j["input"]) << '\n';
        }
        ++x->shown;
        return 0;
      };
      if (!c.json) std::cout << "index\theight\tfpt\tnu\tpolynomial\n";
      check(qfp_sample(&so, cb, &ctx));
    } else if (*rerun) {
      std::ifstream in(rerun_path);
      std::string line;
      std::size_t count = 0, bad = 0;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++count;
        qfp_report* r = nullptr;
        check(qfp_rerun(line.c_str(), &r));
        Report rep(r);
        if (!qfp_report_ok(r)) {
          ++bad;
          std::cout << "record " << count << " differs: " << json_of(r)["differences"].dump() << '\n';
        }
      }
      std::cout << count - bad << "/" << count << " records reproduced\n";
      return bad ? kFail : kOk;
    } else if (*verify) {
      qfp_report* r = nullptr;
      check(qfp_verify_paper(corpus.empty() ? nullptr : corpus.c_str(), tier == "full", &r));
      Report rep(r);
      auto j = json_of(r);
      if (c.json) {
        std::cout << j.dump(1) << '\n';
      } else {
        for (const auto& k : j["checks"]) {
          std::printf("%-4s %-34s %-12s want %-14s got %s\n", k["passed"].get<bool>() ? "ok" : "FAIL",
                      show(k["id"]).c_str(), show(k["fact"]).c_str(), show(k["expected"]).c_str(),
                      show(k["observed"]).c_str());
          std::printf("     \"%s\"\n", show(k["locus"]).c_str());
        }
        std::printf("%zu checks, %s failed, %s entries above tier %s skipped, %.2f s\n", j["checks"].size(),
                    j["failures"].dump().c_str(), j["skipped_entries"].dump().c_str(), tier.c_str(),
                    j["seconds"].get<double>());
      }
      return qfp_report_ok(r) ? kOk : kFail;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kOk;
}
