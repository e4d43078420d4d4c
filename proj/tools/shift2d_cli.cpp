#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shift2d/shift2d.h"

namespace {

using json = nlohmann::json;

struct Failure {
  s2d_status status;
};

int exit_code(s2d_status s) {
  switch (s) {
    case S2D_OK: return 0;
    case S2D_ERR_IO: return 4;
    case S2D_ERR_NOT_PSD:
    case S2D_ERR_FORMULA_MISMATCH:
    case S2D_ERR_INCONSISTENT_LATTICE:
    case S2D_ERR_OVERFLOW:
    case S2D_ERR_INTERNAL: return 3;
    default: return 2;
  }
}

void check(s2d_status s) {
  if (s != S2D_OK) throw Failure{s};
}

double env_tolerance() {
  const char* v = std::getenv("SHIFT2D_TOL");
  if (!v || !*v) return 0.0;
  char* end = nullptr;
  double t = std::strtod(v, &end);
  if (*end != '\0' || !(t > 0.0) || !std::isfinite(t)) {
    std::cerr << "warning: ignoring SHIFT2D_TOL='" << v << "'\n";
    return 0.0;
  }
  return t;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json jnum(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

int method_of(const std::string& m) { return m == "direct" ? S2D_DIRECT : S2D_CLOSED_FORM; }

const char* verdict_word(int v) {
  switch (v) {
    case S2D_PASS: return "PASS";
    case S2D_FAIL: return "FAIL";
    default: return "INCONCLUSIVE";
  }
}

std::string describe(const s2d_witness& w) {
  std::string s;
  switch (w.kind) {
    case S2D_WITNESS_BLOCK:
      s = "n=" + std::to_string(w.n) + " block=" + std::to_string(w.index) + " lambda_min=" + num(w.value) +
          " tr=" + num(w.trace) + " det=" + num(w.det);
      break;
    case S2D_WITNESS_LATTICE_POINT:
      s = "k=(" + std::to_string(w.k1) + "," + std::to_string(w.k2) + ")";
      if (w.lhs != 0.0 || w.rhs != 0.0) s += " lhs=" + num(w.lhs) + " rhs=" + num(w.rhs);
      if (w.n >= 0) s += " n=" + std::to_string(w.n);
      s += " value=" + num(w.value);
      break;
    case S2D_WITNESS_LAMBDA:
      s = "n=" + std::to_string(w.n) + " lambda=" + num(w.lambda_re) + (w.lambda_im != 0.0 ? "+" + num(w.lambda_im) + "i" : "") +
          " lambda_min=" + num(w.value);
      break;
    default: break;
  }
  if (w.detail[0]) s += (s.empty() ? "" : " ") + std::string(w.detail);
  return s;
}

json witness_json(const s2d_witness& w) {
  json j;
  static const char* kinds[] = {"none", "block", "lattice-point", "lambda"};
  j["kind"] = kinds[w.kind >= 0 && w.kind <= 3 ? w.kind : 0];
  j["n"] = w.n;
  j["index"] = w.index;
  j["k1"] = w.k1;
  j["k2"] = w.k2;
  j["lambda_re"] = jnum(w.lambda_re);
  j["lambda_im"] = jnum(w.lambda_im);
  j["value"] = jnum(w.value);
  j["trace"] = jnum(w.trace);
  j["det"] = jnum(w.det);
  j["lhs"] = jnum(w.lhs);
  j["rhs"] = jnum(w.rhs);
  j["detail"] = w.detail;
  return j;
}

using DiagramPtr = std::unique_ptr<s2d_diagram, decltype(&s2d_diagram_free)>;

int cmd_classify(double a, double x, double y, const std::string& method, bool as_json, double tol) {
  s2d_region r{};
  check(s2d_classify(a, x, y, method_of(method), tol, &r));
  if (as_json) {
    json j{{"a", a},
           {"x", x},
           {"y", y},
           {"label", s2d_label_name(r.label)},
           {"subnormal", bool(r.sub)},
           {"hyponormal", bool(r.hyp)},
           {"semi_hyponormal", bool(r.sh)},
           {"weakly_hyponormal", bool(r.wh)},
           {"margin_sub", jnum(r.margin_sub)},
           {"margin_hypo", jnum(r.margin_hypo)},
           {"margin_sh", jnum(r.margin_sh)},
           {"margin_wh", jnum(r.margin_wh)},
           {"boundary", bool(r.boundary)},
           {"method", s2d_method_name(r.method)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  auto yn = [](int b) { return b ? "yes" : "no"; };
  std::cout << "label            " << s2d_label_name(r.label) << "\n"
            << "subnormal        " << yn(r.sub) << "  margin " << num(r.margin_sub) << "\n"
            << "hyponormal       " << yn(r.hyp) << "  margin " << num(r.margin_hypo) << "\n"
            << "semi-hyponormal  " << yn(r.sh) << "  margin " << num(r.margin_sh) << "\n"
            << "weak-hyponormal  " << yn(r.wh) << "  margin " << num(r.margin_wh) << "\n"
            << "boundary         " << yn(r.boundary) << "\n"
            << "method           " << s2d_method_name(r.method) << "\n";
  return 0;
}

int cmd_atlas(s2d_atlas_params p, const std::string& out, const std::string& svg) {
  s2d_atlas* raw = nullptr;
  check(s2d_atlas_run(&p, &raw));
  std::unique_ptr<s2d_atlas, decltype(&s2d_atlas_free)> atlas(raw, &s2d_atlas_free);
  check(s2d_atlas_write_csv(atlas.get(), out.c_str()));
  if (!svg.empty()) check(s2d_atlas_write_svg(atlas.get(), svg.c_str()));
  std::vector<size_t> counts(7, 0);
  size_t boundary = 0;
  for (size_t i = 0; i < s2d_atlas_size(atlas.get()); ++i) {
    s2d_region r{};
    check(s2d_atlas_row(atlas.get(), i, &r));
    ++counts[static_cast<size_t>(r.label)];
    boundary += r.boundary ? 1 : 0;
  }
  std::cout << "rows " << s2d_atlas_size(atlas.get()) << " -> " << out << "\n";
  for (int l = S2D_SUBNORMAL; l <= S2D_OUT; ++l)
    std::cout << "  " << s2d_label_name(l) << " " << counts[static_cast<size_t>(l)] << "\n";
  std::cout << "  boundary " << boundary << "\n";
  return 0;
}

struct CheckRow {
  std::string name;
  std::string verdict;
  std::string detail;
  json extra;
};

int cmd_check(const std::string& weights, const std::string& named, int kmax, int ncap, bool as_json, double tol) {
  s2d_diagram* raw = nullptr;
  if (!weights.empty())
    check(s2d_diagram_load(weights.c_str(), &raw));
  else
    check(s2d_diagram_named(named.c_str(), &raw));
  DiagramPtr d(raw, &s2d_diagram_free);
  if (s2d_diagram_has_formula_tail(d.get()) && ncap <= 0) {
    std::cerr << "error: NoStabilization: '" << s2d_diagram_name(d.get())
              << "' has a formula tail; pass --ncap to choose the level cap\n";
    return 2;
  }

  std::vector<CheckRow> rows;
  s2d_validation v{};
  check(s2d_validate(d.get(), &v));
  rows.push_back({"validate", v.ok ? "PASS" : "FAIL",
                  v.ok ? "" : std::to_string(v.violations) + " violations, worst " + num(v.worst),
                  json{{"violations", v.violations}, {"worst", jnum(v.worst)}}});

  auto run = [&](const std::string& name, s2d_test t, int k) {
    s2d_verdict r{};
    check(s2d_run_test(d.get(), t, k, ncap, tol, &r, nullptr, 0));
    json extra{{"witness", witness_json(r.witness)},
               {"margin", jnum(r.margin)},
               {"levels_checked", r.levels_checked},
               {"failures", r.failure_count}};
    if (r.routes_agree >= 0) extra["routes_agree"] = bool(r.routes_agree);
    if (r.by_grid) extra["grid"] = true;
    std::string detail = describe(r.witness);
    if (r.verdict == S2D_FAIL && r.failure_count > 1) detail += " (" + std::to_string(r.failure_count) + " failures)";
    rows.push_back({name, verdict_word(r.verdict), detail, extra});
    return r.verdict;
  };

  run("L-positive", S2D_TEST_L_POSITIVITY, 0);
  run("hyponormal(6pt)", S2D_TEST_SIX_POINT, 0);
  int best = 0;
  int first_fail = 0;
  bool inconclusive = false;
  s2d_witness fail_witness{};
  for (int k = 1; k <= kmax; ++k) {
    s2d_verdict r{};
    check(s2d_run_test(d.get(), S2D_TEST_K_HYPO, k, ncap, tol, &r, nullptr, 0));
    if (r.verdict == S2D_FAIL) {
      first_fail = k;
      fail_witness = r.witness;
      break;
    }
    if (r.verdict == S2D_INCONCLUSIVE) inconclusive = true;
    best = k;
  }
  {
    std::string verdict = first_fail ? "FAIL" : (inconclusive ? "INCONCLUSIVE" : "PASS");
    std::string detail = "largest k passing " + std::to_string(best);
    if (first_fail) detail += "; k=" + std::to_string(first_fail) + " fails at " + describe(fail_witness);
    json extra{{"kmax", kmax}, {"largest_passing", best}};
    if (first_fail) extra["witness"] = witness_json(fail_witness);
    rows.push_back({"k-hypo<=" + std::to_string(kmax), verdict, detail, extra});
  }
  run("semi-hypo", S2D_TEST_SEMI_HYPO, 0);
  run("weak-hypo", S2D_TEST_WEAK_HYPO, 0);
  run("quasinormal", S2D_TEST_QUASINORMAL, 0);
  s2d_entries_commute e{};
  check(s2d_entries_commute_test(d.get(), ncap, &e));
  rows.push_back({"entries-commute", e.l && e.r && e.weight ? "PASS" : "FAIL",
                  std::string("L ") + (e.l ? "yes" : "no") + ", R " + (e.r ? "yes" : "no") + ", weights " +
                      (e.weight ? "yes" : "no") + ", R on all columns " + (e.r_literal ? "yes" : "no"),
                  json{{"l", bool(e.l)},
                       {"r", bool(e.r)},
                       {"r_all_columns", bool(e.r_literal)},
                       {"weight", bool(e.weight)},
                       {"cap", e.cap}}});

  if (as_json) {
    json j;
    j["diagram"] = s2d_diagram_name(d.get());
    for (const auto& r : rows) {
      json item = r.extra;
      item["verdict"] = r.verdict;
      j["tests"][r.name] = item;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "diagram " << s2d_diagram_name(d.get()) << "\n";
  for (const auto& r : rows) {
    std::string name = r.name;
    name.resize(18, ' ');
    std::string verdict = r.verdict;
    verdict.resize(13, ' ');
    std::cout << name << verdict << r.detail << "\n";
  }
  return 0;
}

int cmd_sqrt2(const std::vector<double>& m, double tol) {
  s2d_sym2 in{m[0], m[1], m[2]};
  s2d_sym2 s{};
  check(s2d_sqrt_psd(in, tol, &s));
  int psd = 0;
  double lmin = 0.0;
  check(s2d_is_psd(s, tol, &psd, &lmin));
  double tr = s.a11 + s.a22;
  double det = s.a11 * s.a22 - s.a12 * s.a12;
  std::cout << "sqrt " << num(s.a11) << " " << num(s.a12) << " " << num(s.a22) << "\n"
            << "tr " << num(tr) << "\n"
            << "det " << num(det) << "\n"
            << "lambda_min " << num(lmin) << "\n";
  return 0;
}

int cmd_audit(double a, const std::vector<double>& window, int nx, int ny, double tol) {
  s2d_e3_audit r{};
  check(s2d_e3_audit_run(a, window[0], window[1], window[2], window[3], nx, ny, tol, &r));
  size_t n = s2d_e3_audit_format(&r, nullptr, 0);
  std::string text(n + 1, '\0');
  s2d_e3_audit_format(&r, text.data(), text.size());
  text.resize(n);
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyponormality tests for 2-variable weighted shifts"};
  app.require_subcommand(1);
  double tol = env_tolerance();

  double ca = 0.5, cx = 0.5, cy = 0.5;
  std::string cmethod = "closed-form";
  bool cjson = false;
  auto* classify = app.add_subcommand("classify", "Classify a point of the family W(a,x,y)");
  classify->add_option("--a", ca)->required();
  classify->add_option("--x", cx)->required();
  classify->add_option("--y", cy)->required();
  classify->add_option("--method", cmethod)->check(CLI::IsMember({"closed-form", "direct"}));
  classify->add_flag("--json", cjson);

  s2d_atlas_params ap{};
  s2d_atlas_params_default(&ap);
  std::string amethod = "closed-form";
  std::string aout = "atlas.csv";
  std::string asvg;
  auto* atlas = app.add_subcommand("atlas", "Sweep a window of the family and write the label atlas");
  atlas->add_option("--a", ap.a, "family parameter a")->capture_default_str();
  atlas->add_option("--xmin", ap.xmin)->capture_default_str();
  atlas->add_option("--xmax", ap.xmax)->capture_default_str();
  atlas->add_option("--ymin", ap.ymin)->capture_default_str();
  atlas->add_option("--ymax", ap.ymax)->capture_default_str();
  atlas->add_option("--nx", ap.nx)->capture_default_str();
  atlas->add_option("--ny", ap.ny)->capture_default_str();
  atlas->add_option("--out", aout, "CSV output")->capture_default_str();
  atlas->add_option("--svg", asvg, "SVG output");
  atlas->add_option("--method", amethod)->check(CLI::IsMember({"closed-form", "direct"}));
  atlas->add_option("--threads", ap.threads, "worker threads (0: all cores)");

  std::string weights, named;
  int kmax = 5, ncap = 0;
  bool kjson = false;
  auto* chk = app.add_subcommand("check", "Run every test on a weight diagram");
  auto* wopt = chk->add_option("--weights", weights, "weight file (JSON)");
  auto* nopt = chk->add_option("--named", named,
                               "drury-arveson | helton-howe | ex215:a,b | ex216:a,b | axy:a,x,y | embed:FILE");
  wopt->excludes(nopt);
  chk->add_option("--kmax", kmax)->check(CLI::Range(1, 12))->capture_default_str();
  chk->add_option("--ncap", ncap, "highest level to scan")->check(CLI::PositiveNumber);
  chk->add_flag("--json", kjson);

  std::vector<double> m;
  auto* sqrt2 = app.add_subcommand("sqrt2", "Square root of a 2x2 PSD matrix");
  sqrt2->add_option("--m", m, "A11 A12 A22")->expected(3)->required();

  double ea = 0.5;
  std::vector<double> window{0.45, 0.66, 0.95, 1.0};
  int enx = 200, eny = 200;
  auto* audit = app.add_subcommand("audit-e3", "Compare the printed semi-hyponormality condition with the direct test");
  audit->add_option("--a", ea)->capture_default_str();
  audit->add_option("--window", window, "XMIN XMAX YMIN YMAX")->expected(4);
  audit->add_option("--nx", enx)->capture_default_str();
  audit->add_option("--ny", eny)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*classify) return cmd_classify(ca, cx, cy, cmethod, cjson, tol);
    if (*atlas) {
      ap.method = method_of(amethod);
      ap.tol = tol;
      return cmd_atlas(ap, aout, asvg);
    }
    if (*chk) {
      if (weights.empty() && named.empty()) {
        std::cerr << "error: check needs --weights or --named\n";
        return 2;
      }
      return cmd_check(weights, named, kmax, ncap, kjson, tol);
    }
    if (*sqrt2) return cmd_sqrt2(m, tol);
    if (*audit) return cmd_audit(ea, window, enx, eny, tol);
  } catch (const Failure& f) {
    std::cerr << "error: " << s2d_status_name(f.status) << ": " << s2d_last_error() << "\n";
    return exit_code(f.status);
  }
  return 0;
}
