#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shift2d {

enum class TailKind { Constant, Formula };

// Finitely presented 2-variable weighted shift.
//
// Core arrays are indexed [k1][k2] with k1 < n1, k2 < n2.  With a constant
// tail, a lattice point outside the core takes the value of the nearest core
// cell.  A formula tail evaluates the builder's closed form everywhere outside
// the core.
class WeightDiagram {
 public:
  WeightDiagram(std::string name, int n1, int n2, std::vector<double> alpha, std::vector<double> beta,
                TailKind tail = TailKind::Constant, std::string formula_id = {});

  const std::string& name() const { return name_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  TailKind tail() const { return tail_; }
  const std::string& formula_id() const { return formula_id_; }
  const std::vector<double>& alpha_core() const { return alpha_; }
  const std::vector<double>& beta_core() const { return beta_; }

  double alpha(int k1, int k2) const;
  double beta(int k1, int k2) const;

  bool operator==(const WeightDiagram& other) const;

 private:
  std::string name_;
  int n1_;
  int n2_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  TailKind tail_;
  std::string formula_id_;
};

bool is_known_formula(const std::string& id);

struct CommutativityViolation {
  int k1 = 0;
  int k2 = 0;
  double lhs = 0.0;  // beta_{k+e1} alpha_k
  double rhs = 0.0;  // alpha_{k+e2} beta_k
  double rel = 0.0;
};

struct ValidationReport {
  bool ok = true;
  int violation_count = 0;
  double worst = 0.0;
  std::vector<CommutativityViolation> violations;  // first 10, scan order (k1, k2)
};

inline constexpr double kCommutativityTol = 1e-12;

ValidationReport validate(const WeightDiagram& d);
// Throws NonCommuting with the worst violation when validate() fails.
void require_valid(const WeightDiagram& d);

class MomentTable {
 public:
  MomentTable(int k1_max, int k2_max, std::vector<double> gamma)
      : k1_max_(k1_max), k2_max_(k2_max), gamma_(std::move(gamma)) {}
  int k1_max() const { return k1_max_; }
  int k2_max() const { return k2_max_; }
  double operator()(int k1, int k2) const { return gamma_[static_cast<size_t>(k1) * (k2_max_ + 1) + k2]; }

 private:
  int k1_max_;
  int k2_max_;
  std::vector<double> gamma_;
};

// Moments on [0,K1]x[0,K2] along the path right-then-up.  Throws Overflow.
MomentTable moments(const WeightDiagram& d, int k1_max, int k2_max);

// Largest relative deviation between the table and products along random
// monotone lattice paths.
double moment_path_deviation(const WeightDiagram& d, const MomentTable& table, int n_paths, std::uint64_t seed);

// Two unilateral weight sequences; the last entry repeats forever.
struct EmbeddingSpec {
  std::vector<double> omega;
  std::vector<double> eta;

  double omega_at(int l) const;
  double eta_at(int l) const;
  double ratio() const { return eta.front() / omega.front(); }
};

void require_valid(const EmbeddingSpec& e);

// Moments of the unilateral shift with weights w (last entry repeating).
std::vector<double> unilateral_moments(const std::vector<double>& w, int n);

// Fills NaN cells of the core arrays from the commutativity relation,
// visiting lattice points in increasing k1+k2 and then k1.  Returns the
// number of cells filled.
int complete_by_commutativity(int n1, int n2, std::vector<double>& alpha, std::vector<double>& beta);

WeightDiagram build_axy(double a, double x, double y);
WeightDiagram build_drury_arveson(int depth);
WeightDiagram build_helton_howe();
WeightDiagram build_constant(double alpha, double beta);
WeightDiagram build_ex215(double a, double b);
WeightDiagram build_ex216(double a, double b);
WeightDiagram build_embedding(const EmbeddingSpec& e);
WeightDiagram build_tensor(const std::vector<double>& omega, const std::vector<double>& eta);

// Weight file I/O.
WeightDiagram load_weights(const std::string& path);
WeightDiagram parse_weights(const std::string& text);
void save_weights(const WeightDiagram& d, const std::string& path);
std::string serialize_weights(const WeightDiagram& d);

}  // namespace shift2d
