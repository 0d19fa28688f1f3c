#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hslab/iwasawa_lab.hpp"
#include "hslab/selftest.hpp"

using namespace hslab;

namespace {

constexpr int kOk = 0, kFailed = 1, kDegenerate = 2, kMalformed = 3;

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

template <class F>
auto parse_list(const std::string& text, size_t count, const char* what, F parse) {
  auto items = split(text);
  if (items.size() != count)
    throw Malformed(std::string(what) + ": expected " + std::to_string(count) + " comma-separated values");
  std::vector<decltype(parse(items[0]))> out;
  for (const auto& it : items) {
    try {
      out.push_back(parse(it));
    } catch (const std::exception&) {
      throw Malformed(std::string(what) + ": cannot parse '" + it + "'");
    }
  }
  return out;
}

int64_t parse_int(const std::string& s) {
  size_t used = 0;
  int64_t v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

GaussRational parse_gauss(const std::string& s) {
  Scalar x = Scalar::parse(s);
  GaussRational g = x.coeff(0);
  if (Scalar(g) != x) throw std::invalid_argument("not a Gaussian rational");
  return g;
}

struct VerifyArgs {
  std::string triples, tau, picard, alpha, json;
  bool timings = false;
};

int cmd_verify(const VerifyArgs& a) {
  FamilyConfig cfg;
  auto t = parse_list(a.triples, 6, "--triples", parse_int);
  cfg.t0 = {t[0], t[1], t[2], LineBundleTriple::Role::V0};
  cfg.t1 = {t[3], t[4], t[5], LineBundleTriple::Role::V1};
  if (!a.tau.empty()) {
    auto v = parse_list(a.tau, 4, "--tau", [](const std::string& s) { return Rational::parse(s); });
    std::copy(v.begin(), v.end(), cfg.tau.t.begin());
  }
  if (!a.picard.empty()) {
    auto v = parse_list(a.picard, 4, "--picard", parse_gauss);
    std::copy(v.begin(), v.end(), cfg.picard.c.begin());
  }
  if (!a.alpha.empty()) {
    try {
      cfg.alpha = Scalar::parse(a.alpha);
    } catch (const std::exception&) {
      throw Malformed("--alpha: cannot parse '" + a.alpha + "'");
    }
  }

  SolutionCandidate c;
  try {
    c = make_family(cfg);
  } catch (const DegenerateCoupling& e) {
    std::cerr << "degenerate coupling: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::invalid_argument& e) {
    throw Malformed(e.what());
  }
  VerificationReport r = verify_family(c, {a.timings});
  std::cout << r.summary();
  if (!a.json.empty()) {
    std::ofstream out(a.json, std::ios::binary);
    if (!out) throw Malformed("--json: cannot open " + a.json);
    out << r.to_json() << "\n";
  }
  return r.hs_solution && r.hermitian_einstein ? kOk : kFailed;
}

struct SweepArgs {
  int max_abs = 0;
  bool require_harmonic = false, require_ch2 = false, raw = false, timings = false;
  std::string out;
  int threads = 1;
};

int cmd_sweep(SweepArgs a) {
  if (a.max_abs < 0) throw Malformed("--max must be non-negative");
  if (const char* env = std::getenv("HS_LAB_THREADS"); env && *env) {
    try {
      a.threads = static_cast<int>(parse_int(env));
    } catch (const std::exception&) {
      throw Malformed(std::string("HS_LAB_THREADS: cannot parse '") + env + "'");
    }
  }
  if (a.threads < 1) throw Malformed("thread count must be positive");

  SweepOptions opts;
  opts.max_abs = a.max_abs;
  opts.require_harmonic = a.require_harmonic;
  opts.require_ch2 = a.require_ch2;
  opts.canonical = !a.raw;
  opts.threads = a.threads;
  opts.timings = a.timings;
  Catalog cat = sweep(opts);

  long harmonic = 0;
  for (const auto& e : cat.entries) harmonic += e.harmonic;
  std::ostream* log = &std::cout;
  if (a.out.empty()) {
    std::cout << cat.to_json_lines();
    log = &std::cerr;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw Malformed("--out: cannot open " + a.out);
    out << cat.to_json_lines();
  }
  *log << "sweep max " << a.max_abs << ": enumerated " << cat.enumerated << ", degenerate " << cat.degenerate
       << ", filtered " << cat.filtered_out << ", families " << cat.entries.size() << ", harmonic " << harmonic << "\n";
  return kOk;
}

int cmd_selftest(const std::string& fault) {
  CalibrationFaults faults;
  if (fault == "dc")
    faults.flip_dc = true;
  else if (fault == "star")
    faults.flip_star = true;
  else if (!fault.empty())
    throw Malformed("--inject-fault: expected dc or star");
  CalibrationReport r = run_calibration(faults);
  for (const auto& c : r.checks) std::cout << (c.ok ? "ok    " : "FAIL  ") << c.name << "\n";
  if (const auto* f = r.first_failure()) {
    std::cout << "first failing identity: " << f->name << "\n";
    return kFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of string-algebroid data on the Iwasawa manifold"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Verify one line-bundle family");
  verify->add_option("--triples", va.triples, "m0,n0,p0,m1,n1,p1")->required();
  verify->add_option("--tau", va.tau, "t1,t2,t3,t4 rational deformation coefficients");
  verify->add_option("--picard", va.picard, "a0_1,a0_2,a1_1,a1_2 Gaussian rationals");
  verify->add_option("--alpha", va.alpha, "explicit coupling instead of the solved one");
  verify->add_option("--json", va.json, "write the JSON report to PATH");
  verify->add_flag("--timings", va.timings, "record elapsed time in the report");

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "Verify every family with entries in [-N, N]");
  sw->add_option("--max", sa.max_abs, "largest absolute entry")->required();
  sw->add_flag("--require-harmonic", sa.require_harmonic, "keep orthogonal triple pairs only");
  sw->add_flag("--require-ch2", sa.require_ch2, "keep pairs with ch2(V0) = ch2(V1)");
  sw->add_flag("--raw", sa.raw, "keep both members of each sign-flipped pair");
  sw->add_flag("--timings", sa.timings, "add per-family timings (output no longer deterministic)");
  sw->add_option("--out", sa.out, "write JSON lines to PATH instead of stdout");
  sw->add_option("--threads", sa.threads, "worker threads; HS_LAB_THREADS overrides");

  std::string fault;
  auto* st = app.add_subcommand("selftest", "Run the exact calibration identities");
  st->add_option("--inject-fault", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*sw) return cmd_sweep(sa);
    return cmd_selftest(fault);
  } catch (const Malformed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
}
