#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "conelab/algebra.hpp"
#include "conelab/rng.hpp"

namespace conelab {

// Order automorphism fixing the unit, tagged by how it acts. Every kind is
// exactly invertible by construction; ExplicitLinear stores both directions.
struct Automorphism {
  struct Permutation {
    std::vector<int> sigma;  // basis atom i goes to sigma[i]
  };
  struct UnitaryConjugation {
    HMatrix u;
    bool entrywise_conjugate = false;  // compose with x -> conj(x) first
  };
  struct SpinRotation {
    Eigen::MatrixXd rot;  // orthogonal k x k acting on the vector part
  };
  struct FactorWise {
    std::vector<Automorphism> parts;  // parts[i] acts on source factor i
    std::vector<int> slot_of;         // image factor of source factor i
  };
  struct ExplicitLinear {
    Eigen::MatrixXd fwd;
    Eigen::MatrixXd inv;
  };

  AlgebraPtr algebra;
  std::variant<Permutation, UnitaryConjugation, SpinRotation, FactorWise,
               ExplicitLinear>
      op;
};

Element apply(const Automorphism& u, const Element& x);
Element apply_inverse(const Automorphism& u, const Element& x);

Automorphism identity_automorphism(const AlgebraPtr& alg);
// f after g, materialized as an explicit matrix pair.
Automorphism compose(const Automorphism& f, const Automorphism& g);

Eigen::MatrixXd as_matrix(const Automorphism& u);
std::string kind_name(const Automorphism& u);

struct AutomorphismValidation {
  double unit_residual = 0.0;
  double max_product_residual = 0.0;   // Jordan multiplicativity
  double max_spectrum_residual = 0.0;  // eigenvalue invariance
  bool positivity_ok = true;           // U and U^-1 preserve the cone
  bool ok = false;
};

AutomorphismValidation validate(const Automorphism& u, int samples, Rng& rng);
// Throws InvalidAutomorphism if validation fails.
void require_valid(const Automorphism& u, int samples, Rng& rng);

}  // namespace conelab
