#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "conelab/hypercomplex.hpp"

namespace conelab {

enum class Family {
  Classical,
  RealSymmetric,
  ComplexHermitian,
  QuaternionHermitian,
  SpinFactor,
  Albert,
  DirectSum,
};

// Which family a coordinate vector means, e.g. Classical(3) or
// DirectSum([ComplexHermitian(2), Classical(2)]).
struct AlgebraKind {
  Family family = Family::Classical;
  int n = 1;                         // matrix size / classical length / spin k
  std::vector<AlgebraKind> factors;  // DirectSum only

  int dim() const;
  int rank() const;
  bool operator==(const AlgebraKind& other) const;
  std::string to_string() const;

  // Spec-string grammar: classical:n, herm_r:n, herm_c:n, herm_h:n, spin:k,
  // albert, sum:<spec>+<spec>+...
  static AlgebraKind parse(const std::string& spec);

  static AlgebraKind classical(int n);
  static AlgebraKind real_symmetric(int n);
  static AlgebraKind complex_hermitian(int n);
  static AlgebraKind quaternion_hermitian(int n);
  static AlgebraKind spin_factor(int k);
  static AlgebraKind albert();
  static AlgebraKind direct_sum(std::vector<AlgebraKind> factors);
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  const AlgebraKind& kind() const { return kind_; }
  int dim() const { return dim_; }
  int rank() const { return rank_; }
  const Eigen::VectorXd& unit_coords() const { return unit_; }
  // Diagonal of the trace-form Gram matrix in the standard basis (the basis
  // is trace-orthogonal by construction; spin coordinates carry weight 2).
  const Eigen::VectorXd& gram_diag() const { return gram_diag_; }

  int num_factors() const { return static_cast<int>(factors_.size()); }
  const AlgebraPtr& factor(int i) const { return factors_[i]; }
  int factor_offset(int i) const { return offsets_[i]; }

  bool is_simple() const { return kind_.family != Family::DirectSum; }
  bool is_abelian() const;  // every leaf factor Classical

 private:
  friend AlgebraPtr make_algebra(const AlgebraKind& kind);
  AlgebraKind kind_;
  int dim_ = 0;
  int rank_ = 0;
  Eigen::VectorXd unit_;
  Eigen::VectorXd gram_diag_;
  std::vector<AlgebraPtr> factors_;  // self for simple algebras: empty
  std::vector<int> offsets_;
};

AlgebraPtr make_algebra(const AlgebraKind& kind);
AlgebraPtr make_algebra(const std::string& spec);

struct Element {
  AlgebraPtr algebra;
  Eigen::VectorXd coords;
};

Element make_element(const AlgebraPtr& alg, Eigen::VectorXd coords);
Element unit_element(const AlgebraPtr& alg);
Element zero_element(const AlgebraPtr& alg);

bool same_algebra(const Element& a, const Element& b);
void require_same_algebra(const Element& a, const Element& b, const char* op);

Element jordan_mul(const Element& a, const Element& b);
double trace_of(const Element& a);
double trace_form(const Element& a, const Element& b);

inline Element add(const Element& a, const Element& b) {
  return Element{a.algebra, a.coords + b.coords};
}
inline Element sub(const Element& a, const Element& b) {
  return Element{a.algebra, a.coords - b.coords};
}
inline Element scale(const Element& a, double s) {
  return Element{a.algebra, s * a.coords};
}
// Trace-form norm, the Euclidean norm all residuals are measured in.
double tnorm(const Element& a);

// Hermitian-matrix bridge (RealSymmetric / ComplexHermitian /
// QuaternionHermitian / Albert only).
int family_hyper_dim(Family f);
HMatrix to_hmatrix(const Element& a);
Element from_hmatrix(const AlgebraPtr& alg, const HMatrix& m);

// DirectSum slicing. For simple algebras factor 0 is the algebra itself.
Element factor_part(const Element& a, int i);
Element embed_factor(const AlgebraPtr& alg, int i, const Element& part);

// Built-in algebra list used by the sampling test suites.
std::vector<std::string> catalog_specs();

}  // namespace conelab
