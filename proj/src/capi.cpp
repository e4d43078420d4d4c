#include "shift2d/shift2d.h"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shift2d/atlas.hpp"
#include "shift2d/axy_region.hpp"
#include "shift2d/blockdecomp.hpp"
#include "shift2d/errors.hpp"
#include "shift2d/hypo_tests.hpp"
#include "shift2d/mat2.hpp"
#include "shift2d/shift_model.hpp"

struct s2d_diagram {
  shift2d::WeightDiagram d;
};

struct s2d_atlas {
  shift2d::AtlasParams params;
  std::vector<shift2d::AtlasRow> rows;
};

namespace {

using namespace shift2d;

thread_local std::string g_last_error;

s2d_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return S2D_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotPsd: return S2D_ERR_NOT_PSD;
    case ErrorCode::NonCommuting: return S2D_ERR_NON_COMMUTING;
    case ErrorCode::NonPositiveWeight: return S2D_ERR_NON_POSITIVE_WEIGHT;
    case ErrorCode::OutOfClass: return S2D_ERR_OUT_OF_CLASS;
    case ErrorCode::SchemaError: return S2D_ERR_SCHEMA;
    case ErrorCode::IoError: return S2D_ERR_IO;
    case ErrorCode::LevelOutOfRange: return S2D_ERR_LEVEL_OUT_OF_RANGE;
    case ErrorCode::NoStabilization: return S2D_ERR_NO_STABILIZATION;
    case ErrorCode::CapTooSmall: return S2D_ERR_CAP_TOO_SMALL;
    case ErrorCode::FormulaMismatch: return S2D_ERR_FORMULA_MISMATCH;
    case ErrorCode::InconsistentLattice: return S2D_ERR_INCONSISTENT_LATTICE;
    case ErrorCode::Overflow: return S2D_ERR_OVERFLOW;
    case ErrorCode::Internal: return S2D_ERR_INTERNAL;
  }
  return S2D_ERR_INTERNAL;
}

template <class F>
s2d_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return S2D_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return S2D_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return S2D_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

PsdTolerance tolerance(double tol) {
  PsdTolerance t;
  if (tol > 0.0) t.rel = tol;
  return t;
}

std::optional<int> cap_of(int ncap) {
  if (ncap <= 0) return std::nullopt;
  return ncap;
}

Sym2 in(s2d_sym2 m) { return {m.a11, m.a12, m.a22}; }
s2d_sym2 out(const Sym2& m) { return {m.a11, m.a12, m.a22}; }

std::vector<double> parse_numbers(const std::string& text, size_t count, const std::string& spec) {
  std::vector<double> v;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    double x = 0.0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) fail(ErrorCode::InvalidArgument, "bad number in '" + spec + "'");
    v.push_back(x);
    pos = end + 1;
  }
  if (v.size() != count)
    fail(ErrorCode::InvalidArgument, "'" + spec + "' needs " + std::to_string(count) + " comma-separated numbers");
  return v;
}

EmbeddingSpec load_embedding(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("embedding file: ") + e.what());
  }
  EmbeddingSpec e;
  try {
    e.omega = j.at("omega").get<std::vector<double>>();
    e.eta = j.at("eta").get<std::vector<double>>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::SchemaError, "embedding file needs numeric arrays 'omega' and 'eta'");
  }
  require_valid(e);
  return e;
}

WeightDiagram named(const std::string& spec) {
  if (spec == "drury-arveson") return build_drury_arveson(8);
  if (spec == "helton-howe") return build_helton_howe();
  auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "unknown diagram '" + spec + "'");
  std::string head = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (head == "ex215") {
    auto v = parse_numbers(rest, 2, spec);
    return build_ex215(v[0], v[1]);
  }
  if (head == "ex216") {
    auto v = parse_numbers(rest, 2, spec);
    return build_ex216(v[0], v[1]);
  }
  if (head == "axy") {
    auto v = parse_numbers(rest, 3, spec);
    return build_axy(v[0], v[1], v[2]);
  }
  if (head == "embed") return build_embedding(load_embedding(rest));
  fail(ErrorCode::InvalidArgument, "unknown diagram '" + spec + "'");
}

s2d_witness witness_out(const Witness& w) {
  s2d_witness r{};
  r.kind = static_cast<int>(w.kind);
  r.n = w.n;
  r.index = w.index;
  r.k1 = w.k1;
  r.k2 = w.k2;
  r.lambda_re = w.lambda_re;
  r.lambda_im = w.lambda_im;
  r.value = w.value;
  r.trace = w.trace;
  r.det = w.det;
  r.lhs = w.lhs;
  r.rhs = w.rhs;
  size_t n = std::min(w.detail.size(), sizeof(r.detail) - 1);
  std::memcpy(r.detail, w.detail.data(), n);
  r.detail[n] = '\0';
  return r;
}

s2d_region region_out(double a, double x, double y, const RegionLabel& l) {
  s2d_region r{};
  r.a = a;
  r.x = x;
  r.y = y;
  r.label = static_cast<int>(l.label);
  r.sub = l.sub;
  r.hyp = l.hyp;
  r.sh = l.sh;
  r.wh = l.wh;
  r.margin_sub = l.margin_sub;
  r.margin_hypo = l.margin_hypo;
  r.margin_sh = l.margin_sh;
  r.margin_wh = l.margin_wh;
  r.boundary = l.boundary;
  r.method = static_cast<int>(l.method);
  return r;
}

Method method_in(int m) {
  if (m == S2D_CLOSED_FORM) return Method::ClosedForm;
  if (m == S2D_DIRECT) return Method::Direct;
  fail(ErrorCode::InvalidArgument, "unknown method " + std::to_string(m));
}

}  // namespace

extern "C" {

const char* s2d_status_name(s2d_status status) {
  if (status == S2D_OK) return "Ok";
  if (status < S2D_OK || status > S2D_ERR_INTERNAL) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(status - 1));
}

const char* s2d_last_error(void) { return g_last_error.c_str(); }

double s2d_default_tolerance(void) { return PsdTolerance{}.rel; }

s2d_status s2d_sqrt_psd(s2d_sym2 m, double tol, s2d_sym2* res) {
  return guarded([&] {
    need(res, "out");
    *res = out(sqrt_psd(in(m), tolerance(tol)));
  });
}

s2d_status s2d_is_psd(s2d_sym2 m, double tol, int* psd, double* lmin) {
  return guarded([&] {
    auto c = is_psd(in(m), tolerance(tol));
    if (psd) *psd = c.psd;
    if (lmin) *lmin = c.lambda_min;
  });
}

s2d_status s2d_sqrt_diff_psd(s2d_sym2 l, s2d_sym2 r, double tol, s2d_sqrt_diff* res) {
  return guarded([&] {
    need(res, "out");
    auto s = sqrt_diff_psd(in(l), in(r), tolerance(tol));
    *res = {s.psd, out(s.diff), s.trace, s.det, s.lambda_min};
  });
}

s2d_status s2d_flat_extension(s2d_sym2 m, double tol, int* flat, double* w) {
  return guarded([&] {
    auto f = flat_extension_check(in(m), tolerance(tol));
    if (flat) *flat = f.flat;
    if (w) *w = f.w;
  });
}

s2d_status s2d_diagram_named(const char* spec, s2d_diagram** res) {
  return guarded([&] {
    need(spec, "spec");
    need(res, "out");
    *res = new s2d_diagram{named(spec)};
  });
}

s2d_status s2d_diagram_axy(double a, double x, double y, s2d_diagram** res) {
  return guarded([&] {
    need(res, "out");
    *res = new s2d_diagram{build_axy(a, x, y)};
  });
}

s2d_status s2d_diagram_create(const char* name, int n1, int n2, const double* alpha, const double* beta,
                              const char* tail, s2d_diagram** res) {
  return guarded([&] {
    need(alpha, "alpha");
    need(beta, "beta");
    need(res, "out");
    if (n1 < 1 || n2 < 1) fail(ErrorCode::SchemaError, "core dimensions must be positive");
    size_t count = static_cast<size_t>(n1) * static_cast<size_t>(n2);
    std::string t = tail ? tail : "constant";
    TailKind kind = TailKind::Constant;
    std::string formula;
    if (t.rfind("formula:", 0) == 0) {
      kind = TailKind::Formula;
      formula = t.substr(8);
    } else if (t != "constant") {
      fail(ErrorCode::SchemaError, "tail must be 'constant' or 'formula:<id>'");
    }
    WeightDiagram d(name ? name : "", n1, n2, std::vector<double>(alpha, alpha + count),
                    std::vector<double>(beta, beta + count), kind, formula);
    require_valid(d);
    *res = new s2d_diagram{std::move(d)};
  });
}

s2d_status s2d_diagram_load(const char* path, s2d_diagram** res) {
  return guarded([&] {
    need(path, "path");
    need(res, "out");
    *res = new s2d_diagram{load_weights(path)};
  });
}

s2d_status s2d_diagram_save(const s2d_diagram* d, const char* path) {
  return guarded([&] {
    need(d, "diagram");
    need(path, "path");
    save_weights(d->d, path);
  });
}

void s2d_diagram_free(s2d_diagram* d) { delete d; }

const char* s2d_diagram_name(const s2d_diagram* d) { return d ? d->d.name().c_str() : ""; }

int s2d_diagram_has_formula_tail(const s2d_diagram* d) { return d && d->d.tail() == TailKind::Formula; }

s2d_status s2d_diagram_weight(const s2d_diagram* d, int k1, int k2, double* alpha, double* beta) {
  return guarded([&] {
    need(d, "diagram");
    if (k1 < 0 || k2 < 0) fail(ErrorCode::InvalidArgument, "lattice indices must be nonnegative");
    if (alpha) *alpha = d->d.alpha(k1, k2);
    if (beta) *beta = d->d.beta(k1, k2);
  });
}

s2d_status s2d_diagram_moment(const s2d_diagram* d, int k1, int k2, double* gamma) {
  return guarded([&] {
    need(d, "diagram");
    need(gamma, "gamma");
    if (k1 < 0 || k2 < 0) fail(ErrorCode::InvalidArgument, "lattice indices must be nonnegative");
    *gamma = moments(d->d, k1, k2)(k1, k2);
  });
}

s2d_status s2d_diagram_stabilization(const s2d_diagram* d, int* level) {
  return guarded([&] {
    need(d, "diagram");
    need(level, "level");
    *level = stabilization_level(d->d);
  });
}

s2d_status s2d_diagram_block(const s2d_diagram* d, int n, int i, s2d_sym2* l, s2d_sym2* r) {
  return guarded([&] {
    need(d, "diagram");
    auto b = blocks(d->d, n);
    if (i < 1 || i > n) fail(ErrorCode::InvalidArgument, "block index must lie in 1..n");
    if (l) *l = out(b.l_mid[static_cast<size_t>(i - 1)]);
    if (r) *r = out(b.r_mid[static_cast<size_t>(i - 1)]);
  });
}

s2d_status s2d_diagram_head_tail(const s2d_diagram* d, int n, double* l_head, double* l_tail) {
  return guarded([&] {
    need(d, "diagram");
    auto b = blocks(d->d, n);
    if (l_head) *l_head = b.l_head;
    if (l_tail) *l_tail = b.l_tail;
  });
}

s2d_status s2d_validate(const s2d_diagram* d, s2d_validation* res) {
  return guarded([&] {
    need(d, "diagram");
    need(res, "out");
    auto v = validate(d->d);
    *res = {v.ok, v.violation_count, v.worst, -1, -1};
    if (!v.violations.empty()) {
      res->first_k1 = v.violations.front().k1;
      res->first_k2 = v.violations.front().k2;
    }
  });
}

s2d_status s2d_run_test(const s2d_diagram* d, s2d_test test, int k, int ncap, double tol, s2d_verdict* res,
                        s2d_witness* failures, size_t max_failures) {
  return guarded([&] {
    need(d, "diagram");
    need(res, "out");
    auto t = tolerance(tol);
    auto cap = cap_of(ncap);
    TestVerdict v;
    switch (test) {
      case S2D_TEST_SIX_POINT: v = six_point_test(d->d, cap, t); break;
      case S2D_TEST_L_POSITIVITY: v = l_positivity_test(d->d, cap, t); break;
      case S2D_TEST_SEMI_HYPO: v = semi_hypo_test(d->d, cap, t); break;
      case S2D_TEST_WEAK_HYPO: v = weak_hypo_test(d->d, cap, LambdaGrid{}, t); break;
      case S2D_TEST_QUASINORMAL: v = quasinormal_test(d->d); break;
      case S2D_TEST_K_HYPO: {
        if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
        auto rep = moment_matrix_test(d->d, k, cap, t, true);
        v.verdict = rep.verdict;
        v.witness = rep.witness;
        v.margin = rep.margin;
        v.levels_checked = rep.cap;
        v.method = "moment";
        if (rep.verdict == Verdict::Fail) v.failures.push_back(rep.witness);
        break;
      }
      default: fail(ErrorCode::InvalidArgument, "unknown test id");
    }
    *res = s2d_verdict{};
    res->verdict = static_cast<int>(v.verdict);
    res->levels_checked = v.levels_checked;
    res->by_grid = v.method == "grid";
    res->routes_agree = v.routes_agree ? static_cast<int>(*v.routes_agree) : -1;
    res->margin = v.margin;
    res->witness = witness_out(v.witness);
    res->failure_count = v.failures.size();
    if (failures)
      for (size_t i = 0; i < std::min(max_failures, v.failures.size()); ++i) failures[i] = witness_out(v.failures[i]);
  });
}

s2d_status s2d_entries_commute_test(const s2d_diagram* d, int ncap, s2d_entries_commute* res) {
  return guarded([&] {
    need(d, "diagram");
    need(res, "out");
    auto e = entries_commute_test(d->d, cap_of(ncap));
    *res = {e.l, e.r, e.r_literal, e.weight, e.cap};
  });
}

const char* s2d_label_name(int label) {
  if (label < S2D_SUBNORMAL || label > S2D_OUT) return "UNKNOWN";
  return label_name(static_cast<Label>(label));
}

const char* s2d_method_name(int method) {
  if (method != S2D_CLOSED_FORM && method != S2D_DIRECT) return "unknown";
  return method_name(static_cast<Method>(method));
}

s2d_status s2d_classify(double a, double x, double y, int method, double tol, s2d_region* res) {
  return guarded([&] {
    need(res, "out");
    auto m = method_in(method);
    auto p = AxyPoint::make(a, x, y);
    *res = region_out(a, x, y, classify(p, m, tolerance(tol)));
  });
}

void s2d_atlas_params_default(s2d_atlas_params* p) {
  if (!p) return;
  AtlasParams d;
  *p = {d.a, d.xmin, d.xmax, d.ymin, d.ymax, d.nx, d.ny, S2D_CLOSED_FORM, d.threads, 0.0};
}

s2d_status s2d_atlas_run(const s2d_atlas_params* p, s2d_atlas** res) {
  return guarded([&] {
    need(p, "params");
    need(res, "out");
    AtlasParams ap;
    ap.a = p->a;
    ap.xmin = p->xmin;
    ap.xmax = p->xmax;
    ap.ymin = p->ymin;
    ap.ymax = p->ymax;
    ap.nx = p->nx;
    ap.ny = p->ny;
    ap.method = method_in(p->method);
    ap.threads = p->threads;
    ap.tol = tolerance(p->tol);
    auto rows = run_atlas(ap);
    *res = new s2d_atlas{ap, std::move(rows)};
  });
}

size_t s2d_atlas_size(const s2d_atlas* atlas) { return atlas ? atlas->rows.size() : 0; }

s2d_status s2d_atlas_row(const s2d_atlas* atlas, size_t i, s2d_region* row) {
  return guarded([&] {
    need(atlas, "atlas");
    need(row, "row");
    if (i >= atlas->rows.size()) fail(ErrorCode::InvalidArgument, "row index out of range");
    const auto& r = atlas->rows[i];
    RegionLabel l;
    l.label = r.label;
    l.margin_sub = r.margin_sub;
    l.margin_hypo = r.margin_hypo;
    l.margin_sh = r.margin_sh;
    l.margin_wh = r.margin_wh;
    l.boundary = r.boundary;
    l.method = r.method;
    l.sub = r.label == Label::Subnormal;
    l.hyp = l.sub || r.label == Label::HypoNotSub;
    l.sh = l.hyp || r.label == Label::ShAndWhNotH || r.label == Label::ShNotWh;
    l.wh = l.hyp || r.label == Label::ShAndWhNotH || r.label == Label::WhNotSh;
    *row = region_out(r.a, r.x, r.y, l);
  });
}

s2d_status s2d_atlas_write_csv(const s2d_atlas* atlas, const char* path) {
  return guarded([&] {
    need(atlas, "atlas");
    need(path, "path");
    write_text_file(path, atlas_csv(atlas->rows));
  });
}

s2d_status s2d_atlas_write_svg(const s2d_atlas* atlas, const char* path) {
  return guarded([&] {
    need(atlas, "atlas");
    need(path, "path");
    write_text_file(path, atlas_svg(atlas->params, atlas->rows));
  });
}

void s2d_atlas_free(s2d_atlas* atlas) { delete atlas; }

s2d_status s2d_e3_audit_run(double a, double xmin, double xmax, double ymin, double ymax, int nx, int ny, double tol,
                            s2d_e3_audit* res) {
  return guarded([&] {
    need(res, "out");
    auto r = e3_audit(a, xmin, xmax, ymin, ymax, nx, ny, tolerance(tol));
    *res = {r.a,     r.xmin,  r.xmax,           r.ymin,
            r.ymax,  r.nx,    r.ny,             r.points,
            r.valid, r.printed_mismatch, r.printed_mismatch_outside_band, r.corrected_mismatch,
            r.corrected_mismatch_outside_band, r.closed_form_mismatch};
  });
}

size_t s2d_e3_audit_format(const s2d_e3_audit* audit, char* buf, size_t len) {
  if (!audit) return 0;
  E3Audit r;
  r.a = audit->a;
  r.xmin = audit->xmin;
  r.xmax = audit->xmax;
  r.ymin = audit->ymin;
  r.ymax = audit->ymax;
  r.nx = audit->nx;
  r.ny = audit->ny;
  r.points = audit->points;
  r.valid = audit->valid;
  r.printed_mismatch = audit->printed_mismatch;
  r.printed_mismatch_outside_band = audit->printed_mismatch_outside_band;
  r.corrected_mismatch = audit->corrected_mismatch;
  r.corrected_mismatch_outside_band = audit->corrected_mismatch_outside_band;
  r.closed_form_mismatch = audit->closed_form_mismatch;
  std::string text = format_e3_report(r);
  if (buf && len > 0) {
    size_t n = std::min(text.size(), len - 1);
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

}  // extern "C"
