#include "conelab/transition.hpp"

#include <cmath>

#include "conelab/automorphism.hpp"
#include "conelab/errors.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

State as_state(const Element& riesz, double tol) {
  if (std::abs(trace_of(riesz) - 1.0) > tol)
    throw NotAnEffect("state is not normalized");
  if (!is_positive(riesz, tol))
    throw NotAnEffect("state Riesz vector is not positive");
  return State{riesz};
}

State atom_state(const Atom& e) { return State{e.element}; }

double transition_probability(const Atom& p, const Atom& q) {
  require_same_algebra(p.element, q.element, "transition_probability");
  return trace_form(p.element, q.element);
}

double symmetry_defect(const Atom& p, const Atom& q) {
  return std::abs(transition_probability(p, q) - transition_probability(q, p));
}

double invariance_check(const Automorphism& u, const Atom& e,
                        const Element& a) {
  const Element unit = unit_element(u.algebra);
  if (tnorm(sub(apply(u, unit), unit)) > 1e-8)
    throw InvalidAutomorphism("map does not fix the unit");
  const double before = trace_form(e.element, a);
  const Element ue = apply(u, e.element);
  const Element ua = apply(u, a);
  return std::abs(before - trace_form(ue, ua));
}

TransitionTable transition_table(const Frame& row, const Frame& col) {
  TransitionTable t;
  t.row = row;
  t.col = col;
  t.probs.resize(row.size(), col.size());
  for (int i = 0; i < row.size(); ++i)
    for (int j = 0; j < col.size(); ++j)
      t.probs(i, j) = transition_probability(row.atoms[i], col.atoms[j]);
  return t;
}

}  // namespace conelab
