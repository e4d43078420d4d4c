#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shift2d/shift_model.hpp"

namespace shift2d::oracle {

// Truncated shift pair on {k : k1 + k2 <= top}; T_i drops vectors that would
// leave the truncation.
struct DenseShift {
  int top = 0;
  Eigen::MatrixXd T1;
  Eigen::MatrixXd T2;

  int index(int k1, int k2) const { return (k1 + k2) * (k1 + k2 + 1) / 2 + k1; }
  int size() const { return static_cast<int>(T1.rows()); }
};

DenseShift dense_shift(const WeightDiagram& d, int top);

// Positions of e_(0,n), ..., e_(n,0) in a DenseShift.
std::vector<int> level_indices(int n);

// L = (T_j^* T_i) and R = (T_i T_j^*) restricted to K(n) (+) K(n), ordered as
// [first copy e_(0,n)..e_(n,0), second copy e_(0,n)..e_(n,0)].
Eigen::MatrixXd level_L(const WeightDiagram& d, int n);
Eigen::MatrixXd level_R(const WeightDiagram& d, int n);

// Permutation taking the ordering above to the block ordering of BlockPair.
std::vector<int> block_permutation(int n);

struct BlockAudit {
  double off_block = 0.0;  // largest |entry| outside the 1x1 / 2x2 blocks
  double mismatch = 0.0;   // largest |entry| difference against blocks()
};

BlockAudit audit_blocks(const WeightDiagram& d, int n);

// Commutators on K(n) assembled from the truncated operators.
struct DenseCommutators {
  Eigen::MatrixXd A, D, B;
};
DenseCommutators dense_commutators(const WeightDiagram& d, int n);

// Symmetric PSD square root by eigendecomposition (negative eigenvalues clamped).
Eigen::MatrixXd sqrt_sym(const Eigen::MatrixXd& m);

}  // namespace shift2d::oracle
