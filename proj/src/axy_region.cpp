#include "shift2d/axy_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "shift2d/errors.hpp"
#include "shift2d/hypo_tests.hpp"
#include "shift2d/numfmt.hpp"
#include "shift2d/shift_model.hpp"

namespace shift2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kRootHalf = std::sqrt(0.5);

std::string pt(const AxyPoint& p) {
  return "(a,x,y) = (" + format_short(p.a) + ", " + format_short(p.x) + ", " + format_short(p.y) + ")";
}

}  // namespace

bool in_class(double a, double x, double y) {
  auto open = [](double v) { return v > 0.0 && v < 1.0; };
  return open(a) && open(x) && open(y) && a * y < x;
}

AxyPoint AxyPoint::make(double a, double x, double y) {
  for (auto [v, n] : {std::pair{a, "a"}, std::pair{x, "x"}, std::pair{y, "y"}})
    if (!(v > 0.0 && v < 1.0))
      fail(ErrorCode::OutOfClass, std::string(n) + " must lie in the open interval (0,1), got " + format_short(v));
  if (!(a * y < x))
    fail(ErrorCode::OutOfClass,
         "class constraint violated: ay >= x (ay = " + format_short(a * y) + ", x = " + format_short(x) + ")");
  return {a, x, y};
}

double hypo_bound(double a, double x) {
  const double x2 = x * x, a2 = a * a;
  return x * std::sqrt((1.0 - x2) / (x2 - 2.0 * a2 * x2 + a2 * a2));
}

double sub_bound(double a, double x) { return std::sqrt((1.0 - x * x) / (1.0 - a * a)); }

double weakhypo_bound(double a, double x) {
  if (a >= kRootHalf) return kInf;
  const double x2 = x * x, a2 = a * a;
  const double yf = std::sqrt((1.0 - x2) / (1.0 - 2.0 * a2));
  const double P = x2 * (1.0 - x2) + (2.0 * a2 - x2) * (2.0 * a2 - x2);
  const double Q = x2 * (1.0 - x2);
  return std::max(yf, std::sqrt(Q / P));
}

HypoCf is_hyponormal_cf(const AxyPoint& p) {
  const double a = p.a, x = p.x, y = p.y;
  HypoCf h;
  h.bound = std::min(hypo_bound(a, x), x / a);
  h.margin = h.bound - y;
  h.holds = h.margin >= 0.0;
  const double root = x * std::sqrt((1.0 - x * x) * (1.0 - y * y));
  const double lo = (x * x * y - root) / y, hi = (x * x * y + root) / y;
  h.interval_form = lo <= a * a && a * a <= hi;
  if (h.interval_form != h.holds && std::abs(h.margin) > kBoundaryBand)
    fail(ErrorCode::FormulaMismatch, "hyponormality bound and interval form disagree at " + pt(p));
  return h;
}

SubCf is_subnormal_cf(const AxyPoint& p) {
  const double a = p.a, x = p.x, y = p.y;
  SubCf s;
  s.bound = sub_bound(a, x);
  s.margin = s.bound - y;
  s.holds = s.margin >= 0.0;
  s.ratio_form = (x * x + y * y - 1.0) / (y * y) <= a * a;
  if (s.ratio_form != s.holds && std::abs(s.margin) > kBoundaryBand)
    fail(ErrorCode::FormulaMismatch, "subnormality bound and ratio form disagree at " + pt(p));
  if (x * x + y * y < 1.0 && !s.holds)
    fail(ErrorCode::FormulaMismatch, "point inside the unit disk is not subnormal at " + pt(p));
  return s;
}

SemiHypoCf is_semihypo_cf(const AxyPoint& p, PsdTolerance tol) {
  const double a = p.a, x = p.x, y = p.y;
  const double a2 = a * a, x2 = x * x, y2 = y * y;
  const double r2 = x2 + y2;
  const double r = std::sqrt(r2);
  SemiHypoCf s;

  // Rotated to the eigenbasis (1,1)/sqrt2, (1,-1)/sqrt2 of L|K(1) and scaled by |(x,y)|.
  const double p_plus = std::sqrt(r2 * (x + a2 * y) / x);
  const double p_minus = std::sqrt(r2 * (x - a2 * y) / x);
  const Sym2 scaled{p_plus - (x + y) * (x + y) / 2.0, -(x2 - y2) / 2.0, p_minus - (x - y) * (x - y) / 2.0};
  s.sh = (1.0 / r) * scaled;
  s.margin = lambda_min(s.sh);
  s.holds = s.margin >= 0.0;

  const Sym2 l1{1.0, a2 * y / x, 1.0};
  const Sym2 r1{x2, x * y, y2};
  const double c = a2 * y / x;
  const SqrtDiff direct = sqrt_diff_psd(l1, (1.0 - c) * (1.0 + c), r1, 0.0, tol);
  s.direct_holds = direct.psd;
  s.direct_lambda_min = direct.lambda_min;

  const double poly_head = 4 * x2 - x2 * x2 + 4 * x2 * x * y + 4 * y2 - 6 * x2 * y2 + 4 * x * y2 * y;
  const double denom = 4 * y * r2;
  s.clause1_printed = a2 <= x * (poly_head - y2 * y) / denom;
  s.clause1_corrected = a2 <= x * (poly_head - y2 * y2) / denom;
  const double d4 = std::pow(x - y, 4);
  s.clause2 = std::sqrt(r2 * (x + a2 * y) / x) >= (x + y) * (x + y) / 2.0 + std::sqrt((x + a2 * y) * d4 / (4 * (x - a2 * y)));
  s.e3_printed = s.clause1_printed && s.clause2;
  s.e3_corrected = s.clause1_corrected && s.clause2;

  if (s.holds != s.direct_holds && std::abs(s.margin) > kBoundaryBand)
    fail(ErrorCode::FormulaMismatch, "semi-hyponormality closed form and direct K(1) route disagree at " + pt(p));
  return s;
}

WeakHypoCf is_weakhypo_cf(const AxyPoint& p) {
  const double a = p.a, x = p.x, y = p.y;
  const double a2 = a * a, x2 = x * x, y2 = y * y;
  WeakHypoCf w;
  w.f = x2 * (1.0 - x2 - y2 + 2.0 * a2 * y2);
  const double P = x2 * (1.0 - x2) + (2.0 * a2 - x2) * (2.0 * a2 - x2);
  const double Q = x2 * (1.0 - x2);
  w.g = P * y2 - Q;
  if (a >= kRootHalf) {
    w.holds = true;
    w.margin = x / a - y;
  } else {
    w.holds = w.f >= 0.0 || P * y2 <= Q;
    w.margin = weakhypo_bound(a, x) - y;
  }
  // ((1-y^2) a^2 x^2) s^2 + f s + a^2 y^2 (1-x^2) >= 0 for s = t^2 > 0
  const double c2 = (1.0 - y2) * a2 * x2, c0 = a2 * y2 * (1.0 - x2);
  w.biquadratic = w.f >= 0.0 || c0 - w.f * w.f / (4.0 * c2) >= 0.0;
  return w;
}

const char* label_name(Label l) {
  switch (l) {
    case Label::Subnormal: return "SUBNORMAL";
    case Label::HypoNotSub: return "HYPO_NOT_SUB";
    case Label::ShAndWhNotH: return "SH_AND_WH_NOT_H";
    case Label::ShNotWh: return "SH_NOT_WH";
    case Label::WhNotSh: return "WH_NOT_SH";
    case Label::Neither: return "NEITHER";
    case Label::Out: return "OUT";
  }
  return "?";
}

const char* method_name(Method m) { return m == Method::Direct ? "direct" : "closed-form"; }

Label label_from(bool sub, bool hyp, bool sh, bool wh) {
  if (sub) return Label::Subnormal;
  if (hyp) return Label::HypoNotSub;
  if (sh && wh) return Label::ShAndWhNotH;
  if (sh) return Label::ShNotWh;
  if (wh) return Label::WhNotSh;
  return Label::Neither;
}

RegionLabel classify(const AxyPoint& p, Method method, PsdTolerance tol) {
  RegionLabel r;
  r.method = method;
  const SubCf s = is_subnormal_cf(p);
  const HypoCf h = is_hyponormal_cf(p);
  const SemiHypoCf sh = is_semihypo_cf(p, tol);
  const WeakHypoCf wh = is_weakhypo_cf(p);
  r.sub = s.holds;
  r.hyp = h.holds;
  r.sh = sh.holds;
  r.wh = wh.holds;
  r.margin_sub = s.margin;
  r.margin_hypo = h.margin;
  r.margin_sh = sh.margin;
  r.margin_wh = wh.margin;
  // Distance to the analytic curves; direct margins are eigenvalues and a
  // passing moment test on this family is always rank deficient.
  r.boundary = std::min({std::abs(r.margin_sub), std::abs(r.margin_hypo), std::abs(r.margin_sh),
                         std::abs(r.margin_wh)}) < kBoundaryBand;
  if (method == Method::Direct) {
    const WeightDiagram d = build_axy(p.a, p.x, p.y);
    const KHypoReport k5 = moment_matrix_test(d, 5, std::nullopt, tol, true);
    const TestVerdict six = six_point_test(d, std::nullopt, tol);
    const TestVerdict semi = semi_hypo_test(d, std::nullopt, tol);
    const TestVerdict weak = weak_hypo_test(d, std::nullopt, {}, tol);
    r.sub = k5.verdict == Verdict::Pass;
    r.hyp = six.verdict == Verdict::Pass;
    r.sh = semi.verdict == Verdict::Pass;
    r.wh = weak.verdict == Verdict::Pass;
    r.margin_sub = k5.margin;
    r.margin_hypo = six.margin;
    r.margin_sh = semi.margin;
    r.margin_wh = weak.margin;
  }
  const bool lattice_ok = (!r.sub || r.hyp) && (!r.hyp || (r.sh && r.wh));
  if (!lattice_ok && !r.boundary)
    fail(ErrorCode::InconsistentLattice, std::string("implication lattice violated (") + method_name(method) +
                                             ") at " + pt(p));
  r.label = label_from(r.sub, r.hyp, r.sh, r.wh);
  return r;
}

E3Audit e3_audit(double a, double xmin, double xmax, double ymin, double ymax, int nx, int ny, PsdTolerance tol) {
  if (nx < 2 || ny < 2) fail(ErrorCode::InvalidArgument, "audit grid needs at least 2 points per axis");
  E3Audit r;
  r.a = a;
  r.xmin = xmin;
  r.xmax = xmax;
  r.ymin = ymin;
  r.ymax = ymax;
  r.nx = nx;
  r.ny = ny;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double x = xmin + (xmax - xmin) * i / (nx - 1);
      const double y = ymin + (ymax - ymin) * j / (ny - 1);
      ++r.points;
      if (!in_class(a, x, y)) continue;
      ++r.valid;
      SemiHypoCf s;
      try {
        s = is_semihypo_cf({a, x, y}, tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FormulaMismatch) throw;
        ++r.closed_form_mismatch;
        continue;
      }
      const bool outside = std::abs(s.direct_lambda_min) > 1e-6;
      if (s.e3_printed != s.direct_holds) {
        ++r.printed_mismatch;
        if (outside) ++r.printed_mismatch_outside_band;
      }
      if (s.e3_corrected != s.direct_holds) {
        ++r.corrected_mismatch;
        if (outside) ++r.corrected_mismatch_outside_band;
      }
      if (s.holds != s.direct_holds) ++r.closed_form_mismatch;
    }
  return r;
}

std::string format_e3_report(const E3Audit& r) {
  std::ostringstream os;
  os << "semi-hyponormality formula audit\n"
     << "a = " << format_short(r.a) << "\n"
     << "window x in [" << format_short(r.xmin) << ", " << format_short(r.xmax) << "], y in ["
     << format_short(r.ymin) << ", " << format_short(r.ymax) << "], grid " << r.nx << " x " << r.ny << "\n"
     << "grid points: " << r.points << "\n"
     << "points in class: " << r.valid << "\n"
     << "printed clause (-y^3) vs direct SH route, disagreements: " << r.printed_mismatch << "\n"
     << "  of which outside the 1e-6 band: " << r.printed_mismatch_outside_band << "\n"
     << "corrected clause (-y^4) vs direct SH route, disagreements: " << r.corrected_mismatch << "\n"
     << "  of which outside the 1e-6 band: " << r.corrected_mismatch_outside_band << "\n"
     << "SH-matrix closed form vs direct SH route, disagreements: " << r.closed_form_mismatch << "\n";
  return os.str();
}

}  // namespace shift2d
