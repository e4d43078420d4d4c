#pragma once

#include <string>

#include "shift2d/mat2.hpp"

namespace shift2d {

inline constexpr double kBoundaryBand = 1e-9;

// Parameter point of the family W(a,x,y): a, x, y in (0,1) and ay < x.
struct AxyPoint {
  double a = 0.5;
  double x = 0.5;
  double y = 0.5;

  static AxyPoint make(double a, double x, double y);  // throws OutOfClass
};

bool in_class(double a, double x, double y);

struct HypoCf {
  bool holds = false;
  double margin = 0.0;  // bound - y
  double bound = 0.0;
  bool interval_form = false;  // a^2 inside the interval around x^2
};

struct SubCf {
  bool holds = false;
  double margin = 0.0;  // bound - y
  double bound = 0.0;
  bool ratio_form = false;  // (x^2 + y^2 - 1)/y^2 <= a^2
};

struct SemiHypoCf {
  bool holds = false;
  double margin = 0.0;  // lambda_min of sqrt(L|K(1)) - sqrt(R|K(1)) from the closed form
  Sym2 sh;              // that difference, closed form
  bool direct_holds = false;
  double direct_lambda_min = 0.0;
  bool clause1_printed = false;
  bool clause1_corrected = false;  // -y^4 in place of -y^3
  bool clause2 = false;
  bool e3_printed = false;
  bool e3_corrected = false;
};

struct WeakHypoCf {
  bool holds = false;
  double margin = 0.0;  // max(f-branch bound, discriminant bound) - y
  double f = 0.0;
  double g = 0.0;
  bool biquadratic = false;  // nonnegativity of the bi-quadratic in t, decided at its vertex
};

HypoCf is_hyponormal_cf(const AxyPoint& p);
SubCf is_subnormal_cf(const AxyPoint& p);
// Throws FormulaMismatch when the closed form and the direct mat2 route
// disagree outside the boundary band.
SemiHypoCf is_semihypo_cf(const AxyPoint& p, PsdTolerance tol = {});
WeakHypoCf is_weakhypo_cf(const AxyPoint& p);

enum class Label { Subnormal, HypoNotSub, ShAndWhNotH, ShNotWh, WhNotSh, Neither, Out };
const char* label_name(Label l);
Label label_from(bool sub, bool hyp, bool sh, bool wh);

enum class Method { ClosedForm, Direct };
const char* method_name(Method m);

struct RegionLabel {
  Label label = Label::Out;
  bool sub = false;
  bool hyp = false;
  bool sh = false;
  bool wh = false;
  double margin_sub = 0.0;
  double margin_hypo = 0.0;
  double margin_sh = 0.0;
  double margin_wh = 0.0;
  bool boundary = false;
  Method method = Method::ClosedForm;
};

// Throws InconsistentLattice when sub => hyp => (sh and wh) fails away from the band.
RegionLabel classify(const AxyPoint& p, Method method = Method::ClosedForm, PsdTolerance tol = {});

// Boundary curves in y as functions of x at fixed a.
double hypo_bound(double a, double x);
double sub_bound(double a, double x);
double weakhypo_bound(double a, double x);  // +inf when a >= sqrt(1/2)

struct E3Audit {
  double a = 0.5;
  double xmin = 0.45, xmax = 0.66, ymin = 0.95, ymax = 1.0;
  int nx = 200, ny = 200;
  long points = 0;
  long valid = 0;
  long printed_mismatch = 0;
  long printed_mismatch_outside_band = 0;  // |direct lambda_min| > 1e-6
  long corrected_mismatch = 0;
  long corrected_mismatch_outside_band = 0;
  long closed_form_mismatch = 0;
};

E3Audit e3_audit(double a, double xmin, double xmax, double ymin, double ymax, int nx, int ny, PsdTolerance tol = {});
std::string format_e3_report(const E3Audit& r);

}  // namespace shift2d
