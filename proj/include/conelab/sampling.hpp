#pragma once

#include "conelab/algebra.hpp"
#include "conelab/rng.hpp"

namespace conelab {

struct Atom;
struct Frame;

// Standard-normal coordinates.
Element random_element(const AlgebraPtr& alg, Rng& rng);
// Square of a random element; lies in the positive cone.
Element random_positive(const AlgebraPtr& alg, Rng& rng);
// Random atom / frame drawn from the spectral frame of a random element.
Atom random_atom(const AlgebraPtr& alg, Rng& rng);
Frame random_frame(const AlgebraPtr& alg, int size, Rng& rng);

}  // namespace conelab
