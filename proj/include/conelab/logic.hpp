#pragma once

#include <vector>

#include "conelab/algebra.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

// Validated wrapper types for the effect-lattice layer. Construction checks
// the defining property; afterwards the element can be used directly.
struct Idempotent {
  Element element;
};

struct Atom {
  Element element;
};

struct Frame {
  std::vector<Atom> atoms;

  int size() const { return static_cast<int>(atoms.size()); }
};

Idempotent as_idempotent(const Element& p, double tol = 1e-8);
Atom as_atom(const Element& e, double tol = 1e-8);
// Validates pairwise orthogonality of the given atoms.
Frame as_frame(std::vector<Atom> atoms, double tol = 1e-8);

// True iff the effect 0 <= a <= I is an extreme point of the effect
// interval, i.e. idempotent. Throws NotAnEffect outside the interval.
bool is_effect_extreme(const Element& a, double tol = 1e-8);

Idempotent orthocomplement(const Idempotent& p);

// The three equivalent orthogonality tests, reported separately so a
// disagreement is visible as the bug signal it would be.
struct OrthogonalityReport {
  bool sum_below_unit;    // e1 + e2 <= I
  bool forward_zero;      // P_{e1}(e2) = 0
  bool backward_zero;     // P_{e2}(e1) = 0
  bool orthogonal;        // consensus
  double pairing;         // trace pairing value
  double min_eigenvalue;  // of I - e1 - e2
};

OrthogonalityReport are_orthogonal(const Atom& e1, const Atom& e2,
                                   double tol = 1e-8);

// Extends a partial frame to size rank with atoms of I - sum(partial).
Frame complete_frame(const AlgebraPtr& alg, const Frame& partial,
                     std::uint64_t split_seed = 0x5eed);

int information_capacity(const AlgebraPtr& alg);

// Meet via the eigenvalue-1 spectral cluster of (p+q)/2; join by De Morgan.
Idempotent lattice_meet(const Idempotent& p, const Idempotent& q);
Idempotent lattice_join(const Idempotent& p, const Idempotent& q);

}  // namespace conelab
