#include "conelab/logic.hpp"

#include <cmath>

#include "conelab/errors.hpp"
#include "conelab/sampling.hpp"

namespace conelab {

Idempotent as_idempotent(const Element& p, double tol) {
  const double res = tnorm(sub(jordan_mul(p, p), p));
  if (res > tol * std::max(1.0, tnorm(p)))
    throw NotAnEffect("element is not idempotent (residual " +
                      std::to_string(res) + ")");
  return Idempotent{p};
}

Atom as_atom(const Element& e, double tol) {
  const double res = tnorm(sub(jordan_mul(e, e), e));
  const double tr = trace_of(e);
  if (res > tol || std::abs(tr - 1.0) > tol)
    throw NotAnAtom("not a primitive idempotent (idempotency residual " +
                    std::to_string(res) + ", trace " + std::to_string(tr) + ")");
  return Atom{e};
}

Frame as_frame(std::vector<Atom> atoms, double tol) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (!are_orthogonal(atoms[i], atoms[j], tol).orthogonal)
        throw InvalidFrame("atoms are not pairwise orthogonal");
    }
  }
  return Frame{std::move(atoms)};
}

bool is_effect_extreme(const Element& a, double tol) {
  const Eigen::VectorXd v = eigenvalues_of(a);
  if (v.minCoeff() < -tol || v.maxCoeff() > 1.0 + tol)
    throw NotAnEffect("element is outside the effect interval [0, I]");
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol && std::abs(v[i] - 1.0) > tol) return false;
  }
  return true;
}

Idempotent orthocomplement(const Idempotent& p) {
  return Idempotent{sub(unit_element(p.element.algebra), p.element)};
}

OrthogonalityReport are_orthogonal(const Atom& e1, const Atom& e2,
                                   double tol) {
  require_same_algebra(e1.element, e2.element, "are_orthogonal");
  OrthogonalityReport r;
  const Element rest =
      sub(unit_element(e1.element.algebra), add(e1.element, e2.element));
  r.min_eigenvalue = eigenvalues_of(rest).minCoeff();
  r.sum_below_unit = r.min_eigenvalue >= -tol;
  r.pairing = trace_form(e1.element, e2.element);
  r.forward_zero = std::abs(r.pairing) <= tol;
  r.backward_zero = std::abs(trace_form(e2.element, e1.element)) <= tol;
  if (r.sum_below_unit != r.forward_zero || r.forward_zero != r.backward_zero)
    throw InconsistentOrthogonality(
        "orthogonality tests disagree: sum_below_unit=" +
        std::to_string(r.sum_below_unit) +
        " pairing=" + std::to_string(r.pairing));
  r.orthogonal = r.sum_below_unit;
  return r;
}

Frame complete_frame(const AlgebraPtr& alg, const Frame& partial,
                     std::uint64_t split_seed) {
  const int m = alg->rank();
  if (partial.size() > m) throw InvalidFrame("partial frame larger than rank");
  Element rest = unit_element(alg);
  for (const Atom& a : partial.atoms) rest = sub(rest, a.element);
  std::vector<Atom> atoms = partial.atoms;
  if (partial.size() < m) {
    const SpectralDecomposition d = spectral_decompose(rest, split_seed);
    for (int k = 0; k < d.eigenvalues.size(); ++k) {
      if (d.eigenvalues[k] > 0.5) atoms.push_back(Atom{d.atoms[k]});
    }
  }
  if (static_cast<int>(atoms.size()) != m)
    throw InvalidFrame("completion did not reach the full rank; the input was "
                       "likely not a frame");
  return as_frame(std::move(atoms));
}

int information_capacity(const AlgebraPtr& alg) { return alg->rank(); }

Idempotent lattice_meet(const Idempotent& p, const Idempotent& q) {
  require_same_algebra(p.element, q.element, "lattice_meet");
  const Element avg = scale(add(p.element, q.element), 0.5);
  const SpectralDecomposition d = spectral_decompose(avg);
  Element meet = zero_element(p.element.algebra);
  for (int k = 0; k < d.eigenvalues.size(); ++k) {
    if (std::abs(d.eigenvalues[k] - 1.0) < 1e-8) meet = add(meet, d.atoms[k]);
  }
  return Idempotent{meet};
}

Idempotent lattice_join(const Idempotent& p, const Idempotent& q) {
  return orthocomplement(lattice_meet(orthocomplement(p), orthocomplement(q)));
}

}  // namespace conelab
