#include "shift2d/shift_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "shift2d/errors.hpp"
#include "shift2d/numfmt.hpp"

namespace shift2d {

namespace {

const char* const kDruryArveson = "drury-arveson";

double da_alpha(int k1, int k2) { return std::sqrt((k1 + 1.0) / (k1 + k2 + 1.0)); }
double da_beta(int k1, int k2) { return std::sqrt((k2 + 1.0) / (k1 + k2 + 1.0)); }

double rel_gap(double p, double q) {
  const double scale = std::max(std::abs(p), std::abs(q));
  return scale > 0.0 ? std::abs(p - q) / scale : 0.0;
}


}  // namespace

bool is_known_formula(const std::string& id) { return id == kDruryArveson; }

WeightDiagram::WeightDiagram(std::string name, int n1, int n2, std::vector<double> alpha, std::vector<double> beta,
                             TailKind tail, std::string formula_id)
    : name_(std::move(name)),
      n1_(n1),
      n2_(n2),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      tail_(tail),
      formula_id_(std::move(formula_id)) {
  if (n1_ < 1 || n2_ < 1) fail(ErrorCode::InvalidArgument, "weight diagram core must be non-empty");
  const size_t cells = static_cast<size_t>(n1_) * n2_;
  if (alpha_.size() != cells || beta_.size() != cells)
    fail(ErrorCode::InvalidArgument, "weight diagram core arrays do not match n1 x n2");
  if (tail_ == TailKind::Formula && !is_known_formula(formula_id_))
    fail(ErrorCode::SchemaError, "unknown tail formula '" + formula_id_ + "'");
  if (tail_ == TailKind::Constant) formula_id_.clear();
  for (size_t i = 0; i < cells; ++i) {
    for (double w : {alpha_[i], beta_[i]}) {
      if (!std::isfinite(w) || !(w > 0.0)) {
        const int k1 = static_cast<int>(i) / n2_;
        const int k2 = static_cast<int>(i) % n2_;
        fail(ErrorCode::NonPositiveWeight, "weight at (" + std::to_string(k1) + "," + std::to_string(k2) +
                                               ") is not a positive finite number: " + format_short(w));
      }
    }
  }
}

double WeightDiagram::alpha(int k1, int k2) const {
  if (k1 < n1_ && k2 < n2_) return alpha_[static_cast<size_t>(k1) * n2_ + k2];
  if (tail_ == TailKind::Formula) return da_alpha(k1, k2);
  return alpha_[static_cast<size_t>(std::min(k1, n1_ - 1)) * n2_ + std::min(k2, n2_ - 1)];
}

double WeightDiagram::beta(int k1, int k2) const {
  if (k1 < n1_ && k2 < n2_) return beta_[static_cast<size_t>(k1) * n2_ + k2];
  if (tail_ == TailKind::Formula) return da_beta(k1, k2);
  return beta_[static_cast<size_t>(std::min(k1, n1_ - 1)) * n2_ + std::min(k2, n2_ - 1)];
}

bool WeightDiagram::operator==(const WeightDiagram& o) const {
  return name_ == o.name_ && n1_ == o.n1_ && n2_ == o.n2_ && alpha_ == o.alpha_ && beta_ == o.beta_ &&
         tail_ == o.tail_ && formula_id_ == o.formula_id_;
}

ValidationReport validate(const WeightDiagram& d) {
  ValidationReport rep;
  for (int k1 = 0; k1 <= d.n1(); ++k1) {
    for (int k2 = 0; k2 <= d.n2(); ++k2) {
      const double lhs = d.beta(k1 + 1, k2) * d.alpha(k1, k2);
      const double rhs = d.alpha(k1, k2 + 1) * d.beta(k1, k2);
      const double rel = rel_gap(lhs, rhs);
      if (rel > kCommutativityTol) {
        rep.ok = false;
        ++rep.violation_count;
        rep.worst = std::max(rep.worst, rel);
        if (rep.violations.size() < 10) rep.violations.push_back({k1, k2, lhs, rhs, rel});
      }
    }
  }
  return rep;
}

void require_valid(const WeightDiagram& d) {
  const ValidationReport rep = validate(d);
  if (rep.ok) return;
  const auto& v = rep.violations.front();
  fail(ErrorCode::NonCommuting, "weights of '" + d.name() + "' do not commute: first violation at (" +
                                    std::to_string(v.k1) + "," + std::to_string(v.k2) + "), " +
                                    std::to_string(rep.violation_count) + " violation(s), worst relative gap " +
                                    format_short(rep.worst));
}

MomentTable moments(const WeightDiagram& d, int k1_max, int k2_max) {
  if (k1_max < 0 || k2_max < 0) fail(ErrorCode::InvalidArgument, "moment table bounds must be nonnegative");
  std::vector<double> g(static_cast<size_t>(k1_max + 1) * (k2_max + 1));
  double row = 1.0;
  for (int k1 = 0; k1 <= k1_max; ++k1) {
    if (k1 > 0) row *= d.alpha(k1 - 1, 0) * d.alpha(k1 - 1, 0);
    double v = row;
    for (int k2 = 0; k2 <= k2_max; ++k2) {
      if (k2 > 0) v *= d.beta(k1, k2 - 1) * d.beta(k1, k2 - 1);
      if (!std::isfinite(v) || !(v > 0.0))
        fail(ErrorCode::Overflow, "moment gamma(" + std::to_string(k1) + "," + std::to_string(k2) +
                                      ") leaves the floating-point range");
      g[static_cast<size_t>(k1) * (k2_max + 1) + k2] = v;
    }
  }
  return MomentTable(k1_max, k2_max, std::move(g));
}

double moment_path_deviation(const WeightDiagram& d, const MomentTable& table, int n_paths, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  const int K1 = table.k1_max();
  const int K2 = table.k2_max();
  for (int p = 0; p < n_paths; ++p) {
    std::uniform_int_distribution<int> e1(0, K1);
    std::uniform_int_distribution<int> e2(0, K2);
    const int t1 = e1(rng);
    const int t2 = e2(rng);
    int k1 = 0, k2 = 0;
    double g = 1.0;
    while (k1 < t1 || k2 < t2) {
      bool right = k2 == t2 || (k1 < t1 && std::bernoulli_distribution(0.5)(rng));
      if (right) {
        g *= d.alpha(k1, k2) * d.alpha(k1, k2);
        ++k1;
      } else {
        g *= d.beta(k1, k2) * d.beta(k1, k2);
        ++k2;
      }
    }
    worst = std::max(worst, rel_gap(g, table(t1, t2)));
  }
  return worst;
}

double EmbeddingSpec::omega_at(int l) const { return omega[std::min<size_t>(l, omega.size() - 1)]; }
double EmbeddingSpec::eta_at(int l) const { return eta[std::min<size_t>(l, eta.size() - 1)]; }

void require_valid(const EmbeddingSpec& e) {
  if (e.omega.empty() || e.eta.empty()) fail(ErrorCode::InvalidArgument, "embedding sequences must be non-empty");
  for (const auto* seq : {&e.omega, &e.eta})
    for (double w : *seq)
      if (!std::isfinite(w) || !(w > 0.0)) fail(ErrorCode::NonPositiveWeight, "embedding weight " + format_short(w));
  const int n = static_cast<int>(std::max(e.omega.size(), e.eta.size()));
  for (int l = 0; l < n; ++l) {
    const double lhs = e.omega_at(l) * e.eta_at(l + 1);
    const double rhs = e.omega_at(l + 1) * e.eta_at(l);
    if (rel_gap(lhs, rhs) > kCommutativityTol)
      fail(ErrorCode::NonCommuting, "embedding does not commute at l = " + std::to_string(l));
  }
}

std::vector<double> unilateral_moments(const std::vector<double>& w, int n) {
  std::vector<double> g(n + 1);
  g[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const double wi = w[std::min<size_t>(i - 1, w.size() - 1)];
    g[i] = g[i - 1] * wi * wi;
  }
  return g;
}

int complete_by_commutativity(int n1, int n2, std::vector<double>& alpha, std::vector<double>& beta) {
  auto at = [n2](std::vector<double>& v, int k1, int k2) -> double* {
    return &v[static_cast<size_t>(k1) * n2 + k2];
  };
  int filled = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int s = 0; s <= n1 + n2 - 2; ++s) {
      for (int k1 = 0; k1 <= s; ++k1) {
        const int k2 = s - k1;
        if (k1 + 1 >= n1 || k2 + 1 >= n2 || k2 >= n2) continue;
        // beta_{k+e1} alpha_k = alpha_{k+e2} beta_k
        double* b1 = at(beta, k1 + 1, k2);
        double* a0 = at(alpha, k1, k2);
        double* a2 = at(alpha, k1, k2 + 1);
        double* b0 = at(beta, k1, k2);
        const int unknown = std::isnan(*b1) + std::isnan(*a0) + std::isnan(*a2) + std::isnan(*b0);
        if (unknown != 1) continue;
        if (std::isnan(*b1)) *b1 = *a2 * *b0 / *a0;
        else if (std::isnan(*a0)) *a0 = *a2 * *b0 / *b1;
        else if (std::isnan(*a2)) *a2 = *b1 * *a0 / *b0;
        else *b0 = *b1 * *a0 / *a2;
        ++filled;
        progress = true;
      }
    }
  }
  return filled;
}

namespace {

WeightDiagram finish(WeightDiagram d) {
  require_valid(d);
  return d;
}

void require_open_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) fail(ErrorCode::OutOfClass, std::string(what) + " must lie in (0,1), got " + format_short(v));
}

}  // namespace

WeightDiagram build_axy(double a, double x, double y) {
  require_open_unit(a, "a");
  require_open_unit(x, "x");
  require_open_unit(y, "y");
  if (!(a * y < x)) fail(ErrorCode::OutOfClass, "class constraint violated: ay >= x (ay = " + format_short(a * y) + ", x = " + format_short(x) + ")");
  const double b = a * y / x;
  // [k1][k2], 3x3 core
  std::vector<double> alpha = {x, a, a, 1, 1, 1, 1, 1, 1};
  std::vector<double> beta = {y, 1, 1, b, 1, 1, b, 1, 1};
  return finish(WeightDiagram("axy:" + format_short(a) + "," + format_short(x) + "," + format_short(y), 3, 3, alpha, beta));
}

WeightDiagram build_drury_arveson(int depth) {
  if (depth < 2) fail(ErrorCode::InvalidArgument, "drury-arveson depth must be >= 2");
  std::vector<double> alpha, beta;
  for (int k1 = 0; k1 < depth; ++k1)
    for (int k2 = 0; k2 < depth; ++k2) {
      alpha.push_back(da_alpha(k1, k2));
      beta.push_back(da_beta(k1, k2));
    }
  return finish(WeightDiagram("drury-arveson", depth, depth, alpha, beta, TailKind::Formula, kDruryArveson));
}

WeightDiagram build_helton_howe() { return finish(WeightDiagram("helton-howe", 1, 1, {1.0}, {1.0})); }

WeightDiagram build_constant(double alpha, double beta) {
  return finish(WeightDiagram("constant:" + format_short(alpha) + "," + format_short(beta), 1, 1, {alpha}, {beta}));
}

WeightDiagram build_ex215(double a, double b) {
  if (!(a > 0.0 && a < b && b < 1.0)) fail(ErrorCode::InvalidArgument, "ex215 requires 0 < a < b < 1");
  const double a2 = a * a, ab = a * b, b2 = b * b;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // alpha[k1][k2]: columns k1 = 0,1 carry (a^2, ab, b^2, b^2) up the k2 axis, columns 2,3 are 1.
  std::vector<double> alpha(16, nan), beta(16, nan);
  const double col[4] = {a2, ab, b2, b2};
  for (int k1 = 0; k1 < 4; ++k1)
    for (int k2 = 0; k2 < 4; ++k2) {
      alpha[k1 * 4 + k2] = k1 < 2 ? col[k2] : 1.0;
      beta[k1 * 4 + k2] = k2 < 2 ? col[k1] : 1.0;
    }
  complete_by_commutativity(4, 4, alpha, beta);
  return finish(WeightDiagram("ex215:" + format_short(a) + "," + format_short(b), 4, 4, alpha, beta));
}

WeightDiagram build_ex216(double a, double b) {
  if (!(a > 0.5)) fail(ErrorCode::InvalidArgument, "ex216 requires a > 1/2");
  if (!(b > 0.0)) fail(ErrorCode::InvalidArgument, "ex216 requires b > 0");
  std::vector<double> alpha = {a, 1, 1, 1};
  std::vector<double> beta = {b, 2 * b, b / a, 2 * b};
  return finish(WeightDiagram("ex216:" + format_short(a) + "," + format_short(b), 2, 2, alpha, beta));
}

WeightDiagram build_embedding(const EmbeddingSpec& e) {
  require_valid(e);
  const int m = static_cast<int>(std::max(e.omega.size(), e.eta.size()));
  std::vector<double> alpha, beta;
  for (int k1 = 0; k1 < m; ++k1)
    for (int k2 = 0; k2 < m; ++k2) {
      alpha.push_back(e.omega_at(k1 + k2));
      beta.push_back(e.eta_at(k1 + k2));
    }
  return finish(WeightDiagram("embedding", m, m, alpha, beta));
}

WeightDiagram build_tensor(const std::vector<double>& omega, const std::vector<double>& eta) {
  if (omega.empty() || eta.empty()) fail(ErrorCode::InvalidArgument, "tensor sequences must be non-empty");
  const int n1 = static_cast<int>(omega.size());
  const int n2 = static_cast<int>(eta.size());
  std::vector<double> alpha, beta;
  for (int k1 = 0; k1 < n1; ++k1)
    for (int k2 = 0; k2 < n2; ++k2) {
      alpha.push_back(omega[k1]);
      beta.push_back(eta[k2]);
    }
  return finish(WeightDiagram("tensor", n1, n2, alpha, beta));
}

}  // namespace shift2d
