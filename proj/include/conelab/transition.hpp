#pragma once

#include <Eigen/Dense>

#include "conelab/algebra.hpp"
#include "conelab/logic.hpp"

namespace conelab {

struct Automorphism;

// A state is a normalized positive functional, kept as its Riesz vector for
// the trace form: mu(x) = <riesz, x>.
struct State {
  Element riesz;

  double operator()(const Element& x) const {
    return trace_form(riesz, x);
  }
};

State as_state(const Element& riesz, double tol = 1e-8);

// The unique state assigning probability 1 to the atom; pure by construction.
State atom_state(const Atom& e);

double transition_probability(const Atom& p, const Atom& q);

// |P_p(q) - P_q(p)|.
double symmetry_defect(const Atom& p, const Atom& q);

// |P_e(a) - P_{Ue}(Ua)|; validates U first.
double invariance_check(const Automorphism& u, const Atom& e,
                        const Element& a);

struct TransitionTable {
  Frame row;
  Frame col;
  Eigen::MatrixXd probs;  // probs(i, j) = P_{row[i]}(col[j])
};

TransitionTable transition_table(const Frame& row, const Frame& col);

}  // namespace conelab
