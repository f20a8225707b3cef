#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "conelab/algebra.hpp"

namespace conelab {

// Complete spectral frame of an element: rank-many eigenvalues (zeros
// included, sorted descending) and the matching pairwise-orthogonal atoms
// summing to the unit.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  std::vector<Element> atoms;
  bool perturbed = false;  // degenerate exceptional-algebra fallback was used
};

// Deterministic for a fixed input; `split_seed` feeds only the random
// elements used to split degenerate eigenvalue clusters.
SpectralDecomposition spectral_decompose(const Element& a,
                                         std::uint64_t split_seed = 0x5eed);

Eigen::VectorXd eigenvalues_of(const Element& a);

double norm_inf(const Element& a);
bool is_positive(const Element& a, double tol = 1e-9);
// Cone order a <= b.
bool cone_leq(const Element& a, const Element& b, double tol = 1e-8);

}  // namespace conelab
