#include "conelab/sampling.hpp"

#include "conelab/errors.hpp"
#include "conelab/logic.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

Element random_element(const AlgebraPtr& alg, Rng& rng) {
  Eigen::VectorXd c(alg->dim());
  for (int i = 0; i < c.size(); ++i) c[i] = rng.gaussian();
  return Element{alg, std::move(c)};
}

Element random_positive(const AlgebraPtr& alg, Rng& rng) {
  const Element a = random_element(alg, rng);
  return jordan_mul(a, a);
}

Atom random_atom(const AlgebraPtr& alg, Rng& rng) {
  const SpectralDecomposition d =
      spectral_decompose(random_element(alg, rng), rng.next_u64());
  return Atom{d.atoms[rng.uniform_int(alg->rank())]};
}

Frame random_frame(const AlgebraPtr& alg, int size, Rng& rng) {
  if (size < 1 || size > alg->rank())
    throw SizeMismatch("frame size out of range");
  const SpectralDecomposition d =
      spectral_decompose(random_element(alg, rng), rng.next_u64());
  // Random subset: pick `size` distinct frame slots.
  std::vector<int> idx(alg->rank());
  for (int i = 0; i < alg->rank(); ++i) idx[i] = i;
  for (int i = 0; i < size; ++i) {
    const int j = i + rng.uniform_int(alg->rank() - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<Atom> atoms;
  for (int i = 0; i < size; ++i) atoms.push_back(Atom{d.atoms[idx[i]]});
  return Frame{std::move(atoms)};
}

}  // namespace conelab
