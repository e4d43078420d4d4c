#include "shift2d/mat2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shift2d/errors.hpp"

namespace shift2d {

namespace {

// a*d - b*c with one rounding error (Kahan).
double diff_of_products(double a, double d, double b, double c) {
  const double w = b * c;
  const double e = std::fma(-b, c, w);
  const double f = std::fma(a, d, -w);
  return f + e;
}

}  // namespace

double Sym2::det() const { return diff_of_products(a11, a22, a12, a12); }

Sym2 square(const Sym2& s) {
  return {s.a11 * s.a11 + s.a12 * s.a12, s.a12 * (s.a11 + s.a22), s.a12 * s.a12 + s.a22 * s.a22};
}

double lambda_max(const Sym2& m) {
  const double mean = 0.5 * (m.a11 + m.a22);
  const double h = std::hypot(0.5 * (m.a11 - m.a22), m.a12);
  return mean + h;
}

namespace {

double lambda_min_from(const Sym2& m, double det) {
  const double mean = 0.5 * (m.a11 + m.a22);
  const double h = std::hypot(0.5 * (m.a11 - m.a22), m.a12);
  const double hi = mean + h;
  if (hi > 0.0 && mean > 0.0) return det / hi;
  return mean - h;
}

Sym2 sqrt_checked(const Sym2& m, double det, PsdTolerance tol) {
  const double lmin = lambda_min_from(m, det);
  if (!(lmin >= -tol.band(m))) {
    std::ostringstream os;
    os.precision(17);
    os << "sqrt_psd: matrix [[" << m.a11 << ", " << m.a12 << "], [" << m.a12 << ", " << m.a22
       << "]] is not PSD (lambda_min = " << lmin << ")";
    fail(ErrorCode::NotPsd, os.str());
  }
  const double q = std::sqrt(std::max(det, 0.0));
  const double s = m.trace() + 2.0 * q;
  if (!(s > 0.0)) return {};
  const double inv = 1.0 / std::sqrt(s);
  return {(m.a11 + q) * inv, m.a12 * inv, (m.a22 + q) * inv};
}

}  // namespace

double lambda_min(const Sym2& m) { return lambda_min_from(m, m.det()); }

PsdCheck is_psd(const Sym2& m, PsdTolerance tol) {
  const double lmin = lambda_min(m);
  return {lmin >= -tol.band(m), lmin};
}

Sym2 sqrt_psd(const Sym2& m, PsdTolerance tol) { return sqrt_checked(m, m.det(), tol); }

Sym2 sqrt_psd(const Sym2& m, double det, PsdTolerance tol) { return sqrt_checked(m, det, tol); }

SqrtDiff sqrt_diff_psd(const Sym2& l, const Sym2& r, PsdTolerance tol) {
  return sqrt_diff_psd(l, l.det(), r, r.det(), tol);
}

SqrtDiff sqrt_diff_psd(const Sym2& l, double det_l, const Sym2& r, double det_r, PsdTolerance tol) {
  const Sym2 d = sqrt_checked(l, det_l, tol) - sqrt_checked(r, det_r, tol);
  const PsdCheck check = is_psd(d, tol);
  return {check.psd, d, d.trace(), d.det(), check.lambda_min};
}

FlatExtension flat_extension_check(const Sym2& m, PsdTolerance tol) {
  if (!(m.a11 > 0.0)) fail(ErrorCode::InvalidArgument, "flat_extension_check: a11 must be positive");
  const double lmin = lambda_min(m);
  FlatExtension out;
  out.det = m.det();
  out.flat = std::abs(lmin) <= tol.band(m);
  out.w = m.a12 / m.a11;
  return out;
}

}  // namespace shift2d
