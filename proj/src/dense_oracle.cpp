#include "shift2d/dense_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "shift2d/blockdecomp.hpp"

namespace shift2d::oracle {

DenseShift dense_shift(const WeightDiagram& d, int top) {
  DenseShift s;
  s.top = top;
  const int m = (top + 1) * (top + 2) / 2;
  s.T1 = Eigen::MatrixXd::Zero(m, m);
  s.T2 = Eigen::MatrixXd::Zero(m, m);
  for (int lvl = 0; lvl < top; ++lvl)
    for (int k1 = 0; k1 <= lvl; ++k1) {
      const int k2 = lvl - k1;
      s.T1(s.index(k1 + 1, k2), s.index(k1, k2)) = d.alpha(k1, k2);
      s.T2(s.index(k1, k2 + 1), s.index(k1, k2)) = d.beta(k1, k2);
    }
  return s;
}

std::vector<int> level_indices(int n) {
  std::vector<int> idx;
  for (int j = 0; j <= n; ++j) idx.push_back(n * (n + 1) / 2 + j);
  return idx;
}

namespace {

Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) out(r, c) = m(idx[r], idx[c]);
  return out;
}

Eigen::MatrixXd assemble(const Eigen::MatrixXd& b11, const Eigen::MatrixXd& b12, const Eigen::MatrixXd& b21,
                         const Eigen::MatrixXd& b22) {
  const int k = static_cast<int>(b11.rows());
  Eigen::MatrixXd out(2 * k, 2 * k);
  out << b11, b12, b21, b22;
  return out;
}

}  // namespace

Eigen::MatrixXd level_L(const WeightDiagram& d, int n) {
  const DenseShift s = dense_shift(d, n + 1);
  const auto idx = level_indices(n);
  const Eigen::MatrixXd& T1 = s.T1;
  const Eigen::MatrixXd& T2 = s.T2;
  return assemble(restrict(T1.transpose() * T1, idx), restrict(T2.transpose() * T1, idx),
                  restrict(T1.transpose() * T2, idx), restrict(T2.transpose() * T2, idx));
}

Eigen::MatrixXd level_R(const WeightDiagram& d, int n) {
  const DenseShift s = dense_shift(d, n + 1);
  const auto idx = level_indices(n);
  const Eigen::MatrixXd& T1 = s.T1;
  const Eigen::MatrixXd& T2 = s.T2;
  return assemble(restrict(T1 * T1.transpose(), idx), restrict(T1 * T2.transpose(), idx),
                  restrict(T2 * T1.transpose(), idx), restrict(T2 * T2.transpose(), idx));
}

std::vector<int> block_permutation(int n) {
  const int k = n + 1;
  std::vector<int> p;
  p.push_back(0);
  for (int i = 1; i <= n; ++i) {
    p.push_back(i);
    p.push_back(k + i - 1);
  }
  p.push_back(k + n);
  return p;
}

BlockAudit audit_blocks(const WeightDiagram& d, int n) {
  const auto p = block_permutation(n);
  const Eigen::MatrixXd L = restrict(level_L(d, n), p);
  const Eigen::MatrixXd R = restrict(level_R(d, n), p);
  const BlockPair bp = blocks(d, n);
  const int m = static_cast<int>(p.size());

  // Block id of each permuted position: head, mids 1..n, tail.
  std::vector<int> block(m);
  block[0] = 0;
  for (int i = 1; i <= n; ++i) block[2 * i - 1] = block[2 * i] = i;
  block[m - 1] = n + 1;

  Eigen::MatrixXd Lb = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd Rb = Eigen::MatrixXd::Zero(m, m);
  Lb(0, 0) = bp.l_head;
  Lb(m - 1, m - 1) = bp.l_tail;
  for (int i = 1; i <= n; ++i) {
    const Sym2& l = bp.l_mid[i - 1];
    const Sym2& r = bp.r_mid[i - 1];
    const int o = 2 * i - 1;
    Lb(o, o) = l.a11;
    Lb(o, o + 1) = Lb(o + 1, o) = l.a12;
    Lb(o + 1, o + 1) = l.a22;
    Rb(o, o) = r.a11;
    Rb(o, o + 1) = Rb(o + 1, o) = r.a12;
    Rb(o + 1, o + 1) = r.a22;
  }

  BlockAudit out;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      if (block[r] != block[c]) out.off_block = std::max({out.off_block, std::abs(L(r, c)), std::abs(R(r, c))});
      out.mismatch = std::max({out.mismatch, std::abs(L(r, c) - Lb(r, c)), std::abs(R(r, c) - Rb(r, c))});
    }
  return out;
}

DenseCommutators dense_commutators(const WeightDiagram& d, int n) {
  const DenseShift s = dense_shift(d, n + 1);
  const auto idx = level_indices(n);
  const Eigen::MatrixXd& T1 = s.T1;
  const Eigen::MatrixXd& T2 = s.T2;
  DenseCommutators out;
  out.A = restrict(T1.transpose() * T1 - T1 * T1.transpose(), idx);
  out.D = restrict(T2.transpose() * T2 - T2 * T2.transpose(), idx);
  out.B = restrict(T1.transpose() * T2 - T2 * T1.transpose(), idx);
  return out;
}

Eigen::MatrixXd sqrt_sym(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace shift2d::oracle
