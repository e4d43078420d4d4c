#pragma once

#include <cmath>

namespace shift2d {

// Real symmetric 2x2 matrix [[a11, a12], [a12, a22]].
struct Sym2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  static constexpr Sym2 identity() { return {1.0, 0.0, 1.0}; }

  double trace() const { return a11 + a22; }
  double det() const;
  double frobenius() const { return std::sqrt(a11 * a11 + 2.0 * a12 * a12 + a22 * a22); }
  bool finite() const { return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a22); }

  friend Sym2 operator+(const Sym2& l, const Sym2& r) { return {l.a11 + r.a11, l.a12 + r.a12, l.a22 + r.a22}; }
  friend Sym2 operator-(const Sym2& l, const Sym2& r) { return {l.a11 - r.a11, l.a12 - r.a12, l.a22 - r.a22}; }
  friend Sym2 operator*(double s, const Sym2& m) { return {s * m.a11, s * m.a12, s * m.a22}; }
  friend bool operator==(const Sym2&, const Sym2&) = default;
};

// S*S for symmetric S.
Sym2 square(const Sym2& s);

struct PsdTolerance {
  double rel = 1e-10;

  double band(const Sym2& m) const { return rel * (1.0 + m.frobenius()); }
};

double lambda_min(const Sym2& m);
double lambda_max(const Sym2& m);

struct PsdCheck {
  bool psd = false;
  double lambda_min = 0.0;
};

PsdCheck is_psd(const Sym2& m, PsdTolerance tol = {});

// Throws Error(NotPsd) when m is indefinite beyond the tolerance band.
// The zero matrix maps to zero.
Sym2 sqrt_psd(const Sym2& m, PsdTolerance tol = {});

struct SqrtDiff {
  bool psd = false;
  Sym2 diff;
  double trace = 0.0;
  double det = 0.0;
  double lambda_min = 0.0;
};

// Tests sqrt(l) - sqrt(r) >= 0.
SqrtDiff sqrt_diff_psd(const Sym2& l, const Sym2& r, PsdTolerance tol = {});

// Same, with determinants supplied by the caller.  Near-singular blocks formed from rounded entries
// lose their determinant to cancellation, and the square root amplifies that to sqrt(eps).
Sym2 sqrt_psd(const Sym2& m, double det, PsdTolerance tol);
SqrtDiff sqrt_diff_psd(const Sym2& l, double det_l, const Sym2& r, double det_r, PsdTolerance tol = {});

struct FlatExtension {
  bool flat = false;
  double w = 0.0;
  double det = 0.0;
};

// Requires a11 > 0.  When flat, m == [[a11, a11*w], [w*a11, w*a11*w]].
FlatExtension flat_extension_check(const Sym2& m, PsdTolerance tol = {});

}  // namespace shift2d
