#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "conelab/lp.hpp"
#include "conelab/rng.hpp"

namespace conelab {

// V-representation polytope; every listed vertex must be extreme.
struct Polytope {
  Eigen::MatrixXd vertices;  // one vertex per row

  int count() const { return static_cast<int>(vertices.rows()); }
  int dim() const { return static_cast<int>(vertices.cols()); }
  Eigen::VectorXd vertex(int i) const { return vertices.row(i).transpose(); }
  Eigen::VectorXd centroid() const {
    return vertices.colwise().mean().transpose();
  }
};

// Validates extremality (LP) and absence of duplicates.
Polytope make_polytope(Eigen::MatrixXd vertices);
// triangle, square, pentagon, simplex:n.
Polytope builtin_polytope(const std::string& name);
std::vector<std::string> builtin_polytope_names();

struct AffineFunction {
  double offset = 0.0;
  Eigen::VectorXd gradient;

  double operator()(const Eigen::VectorXd& x) const {
    return offset + gradient.dot(x);
  }
};

bool contains_point(const Polytope& p, const Eigen::VectorXd& zeta,
                    double tol = 1e-8);
// Index of the vertex matching omega, or NotAVertex.
int vertex_index(const Polytope& p, const Eigen::VectorXd& omega,
                 double tol = 1e-9);

// inf { a(zeta) : a affine, a >= 0 on P, a(omega_index) = 1 }.
double e_omega_value(const Polytope& p, int omega_index,
                     const Eigen::VectorXd& zeta);

struct VertexStarReport {
  int vertex = 0;
  Eigen::VectorXd values_at_vertices;
  double vertex_fit_residual = 0.0;  // best affine fit through the values
  bool fit_consistent = false;
  double centroid_value = 0.0;  // LP value at the centroid
  double centroid_fit = 0.0;    // affine-fit prediction there
  double max_interior_gap = 0.0;
  bool affine = false;       // fit consistent + interior gaps below tol
  bool unique_peak = false;  // value 1 only at omega
  bool passes = false;
};

struct StarStarReport {
  std::vector<VertexStarReport> per_vertex;
  bool property_holds = false;
};

// Checks, for every vertex, that the minimal nonnegative unit-peak function
// is affine and peaks nowhere else. Interior points are sampled with rng.
StarStarReport star_star_check(const Polytope& p, int interior_samples,
                               Rng& rng);

struct DistinguishResult {
  bool distinguishable = false;
  AffineFunction witness;  // valid when distinguishable
};

// Feasibility of an effect with a(w1) = 1, a(w2) = 0, 0 <= a <= 1 on P.
DistinguishResult perfectly_distinguishable(const Polytope& p, int w1, int w2);

// Affine bijection of the polytope, with the vertex permutation it induces.
struct PolytopeMap {
  Eigen::MatrixXd linear;
  Eigen::VectorXd offset;
  std::vector<int> vertex_perm;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
    return linear * x + offset;
  }
};

// All affine bijections of P (vertex count <= 16), found by pruned search
// over permutations preserving the affine dependence structure.
std::vector<PolytopeMap> polytope_automorphisms(const Polytope& p);

// (T* a)(omega) = a(T omega) as a linear map on (offset, gradient).
Eigen::MatrixXd dualize_automorphism(const Polytope& p, const PolytopeMap& t);

struct PolytopeBitSymmetry {
  bool holds = false;
  int distinguishable_pairs = 0;  // ordered pairs
  int automorphisms = 0;
  std::string obstruction;  // pair of pairs with no transporter
};

PolytopeBitSymmetry polytope_bit_symmetry(const Polytope& p);

}  // namespace conelab
