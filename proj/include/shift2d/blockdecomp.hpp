#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shift2d/mat2.hpp"
#include "shift2d/shift_model.hpp"

namespace shift2d {

// Aligned decomposition of L and R restricted to K(n) = span{e_k : k1 + k2 = n}.
// l_mid[i-1] and r_mid[i-1] act on the pair (e_(i,n-i) in the first copy,
// e_(i-1,n-i+1) in the second copy).  The head and tail of R are zero.
struct BlockPair {
  int n = 0;
  double l_head = 0.0;
  std::vector<Sym2> l_mid;
  double l_tail = 0.0;
  std::vector<Sym2> r_mid;
  // Determinants of the mid blocks from factored weights, exact up to a few ulps.
  std::vector<double> l_det;
  std::vector<double> r_det;  // R blocks are rank one
};

BlockPair blocks(const WeightDiagram& d, int n);

// Commutators restricted to K(n) in the basis e_(0,n), e_(1,n-1), ..., e_(n,0).
//   A = [T1*, T1], D = [T2*, T2], B = [T1*, T2]  ([T2*, T1] = B^T).
struct CommutatorBlocks {
  int n = 0;
  Eigen::MatrixXd A;
  Eigen::MatrixXd D;
  Eigen::MatrixXd B;
};

CommutatorBlocks commutator_blocks(const WeightDiagram& d, int n);

// n_max = n1 + n2 for constant tails; NoStabilization for formula tails.
int stabilization_level(const WeightDiagram& d);

inline constexpr int kMaxLevel = 4096;

}  // namespace shift2d
