#include "shift2d/blockdecomp.hpp"

#include <string>

#include "shift2d/errors.hpp"

#ifndef NDEBUG
#include "shift2d/dense_oracle.hpp"
#endif

namespace shift2d {

namespace {

void check_level(int n) {
  if (n < 0 || n > kMaxLevel) fail(ErrorCode::LevelOutOfRange, "level n = " + std::to_string(n) + " is out of range");
}

}  // namespace

BlockPair blocks(const WeightDiagram& d, int n) {
  check_level(n);
  BlockPair bp;
  bp.n = n;
  bp.l_head = d.alpha(0, n) * d.alpha(0, n);
  bp.l_tail = d.beta(n, 0) * d.beta(n, 0);
  bp.l_mid.reserve(n);
  bp.r_mid.reserve(n);
  bp.l_det.reserve(n);
  bp.r_det.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const double a_in = d.alpha(i, n - i);
    const double a_up = d.alpha(i - 1, n - i + 1);
    const double b_in = d.beta(i, n - i);
    const double b_up = d.beta(i - 1, n - i + 1);
    bp.l_mid.push_back({a_in * a_in, a_up * b_in, b_up * b_up});
    const double ra = d.alpha(i - 1, n - i);
    const double rb = d.beta(i - 1, n - i);
    bp.r_mid.push_back({ra * ra, ra * rb, rb * rb});
    bp.l_det.push_back((a_in * b_up - a_up * b_in) * (a_in * b_up + a_up * b_in));
    bp.r_det.push_back(0.0);
  }
#ifndef NDEBUG
  if (n <= 8) {
    const oracle::BlockAudit audit = oracle::audit_blocks(d, n);
    if (audit.off_block > 1e-14 || audit.mismatch > 1e-12)
      fail(ErrorCode::Internal, "block decomposition disagrees with the dense oracle at n = " + std::to_string(n));
  }
#endif
  return bp;
}

CommutatorBlocks commutator_blocks(const WeightDiagram& d, int n) {
  check_level(n);
  CommutatorBlocks cb;
  cb.n = n;
  cb.A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  cb.D = Eigen::MatrixXd::Zero(n + 1, n + 1);
  cb.B = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    const int k2 = n - j;
    const double a = d.alpha(j, k2);
    const double b = d.beta(j, k2);
    cb.A(j, j) = a * a - (j >= 1 ? d.alpha(j - 1, k2) * d.alpha(j - 1, k2) : 0.0);
    cb.D(j, j) = b * b - (k2 >= 1 ? d.beta(j, k2 - 1) * d.beta(j, k2 - 1) : 0.0);
    if (k2 >= 1) {
      // [T2*, T1] e_(j,k2) = c e_(j+1,k2-1)
      const double c = a * d.beta(j + 1, k2 - 1) - d.alpha(j, k2 - 1) * d.beta(j, k2 - 1);
      cb.B(j, j + 1) = c;
    }
  }
  return cb;
}

int stabilization_level(const WeightDiagram& d) {
  if (d.tail() != TailKind::Constant)
    fail(ErrorCode::NoStabilization, "'" + d.name() + "' has a formula tail; an explicit level cap is required");
  return d.n1() + d.n2();
}

}  // namespace shift2d
