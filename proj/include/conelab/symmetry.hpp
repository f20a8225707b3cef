#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conelab/automorphism.hpp"
#include "conelab/logic.hpp"
#include "conelab/transition.hpp"

namespace conelab {

// Haar draw from the sampled automorphism subgroup of the family: uniform
// permutations (Classical), QR-corrected Gaussian unitaries over R/C/H
// (matrix families, with entrywise conjugation mixed in over C), Haar
// orthogonal maps (spin), products of Peirce reflections (exceptional),
// factor-wise draws plus swaps of same-kind factors (direct sums).
Automorphism haar_sample(const AlgebraPtr& alg, Rng& rng);

// Peirce reflection 2 s o (s o x) - x at s = 2w - I; an involutive
// automorphism for any idempotent w.
Automorphism peirce_reflection(const Idempotent& w);

// Symmetric positive definite pairing, stored as a Gram matrix in the
// standard basis.
struct BilinearForm {
  AlgebraPtr algebra;
  Eigen::MatrixXd gram;

  double operator()(const Element& a, const Element& b) const {
    return a.coords.dot(gram * b.coords);
  }
};

BilinearForm make_bilinear_form(const AlgebraPtr& alg, Eigen::MatrixXd gram);
BilinearForm trace_bilinear_form(const AlgebraPtr& alg);

// The normalized trace state; invariant under every automorphism and equal
// to 1/rank on every atom.
State invariant_state(const AlgebraPtr& alg);
// Empirical Haar average of mu0 over n samples.
State average_state(const State& mu0, int n, Rng& rng);

// (1-beta) * trace form + beta * m^2 * mu_inv (x) mu_inv, positive definite
// exactly for beta in (-1/(m-1), 1); atoms keep unit norm for every beta.
BilinearForm make_invariant_form(const AlgebraPtr& alg, double beta);
// Adds gamma * (tr_i (x) tr_j + tr_j (x) tr_i) across distinct factors of a
// direct sum; breaks the constancy of the orthogonal-pair value on purpose.
BilinearForm make_invariant_form_with_cross_term(const AlgebraPtr& alg,
                                                 double beta, double gamma);

// Common value of the form on sampled orthogonal atom pairs. Throws
// EpsilonNotConstant when the sampled values spread beyond tolerance.
double measure_epsilon(const BilinearForm& form, int samples, Rng& rng,
                       double spread_tol = 1e-8);

struct SelfDualFormResult {
  double epsilon = 0.0;
  BilinearForm base;
  BilinearForm result;
  int atom_samples = 0;
  double max_atom_norm_residual = 0.0;
  double max_orthogonal_residual = 0.0;
  double max_transition_residual = 0.0;
  double max_unit_pairing_residual = 0.0;
};

// Rescales an invariant form so atoms become orthonormal exactly when
// orthogonal in the quantum logic; the positive cone is self-dual for the
// result. CLI subcommand `theorem2`.
SelfDualFormResult build_self_dual_form(const BilinearForm& base, int samples,
                                        Rng& rng);

struct SelfDualityReport {
  int positive_pairs = 0;
  double worst_positive_value = 0.0;   // most negative pairing seen
  int negative_witnesses = 0;
  double worst_witness_value = 0.0;    // least negative witness pairing
  bool pass = false;
};

// (i) sampled positive pairs must pair nonnegatively, (ii) each sampled
// non-positive element gets an explicit separating witness. Throws
// SelfDualityViolated on failure.
SelfDualityReport self_duality_check(const BilinearForm& form, int samples,
                                     Rng& rng);

// Up = q; the returned map is an involution, so it also sends q to p.
Automorphism transport_atom(const Atom& p, const Atom& q);
// Up = q and Uq = p.
Automorphism exchange_automorphism(const Atom& p, const Atom& q);

struct TransporterResult {
  std::optional<Automorphism> transporter;
  std::string obstruction;  // non-empty iff no transporter
  double residual = 0.0;
};

// Ordered frame-to-frame transport.
TransporterResult transport_frame(const Frame& f1, const Frame& f2);

enum class SymmetryLevel { Weak, Exchange, Bit, Strong };
const char* to_string(SymmetryLevel level);

struct SymmetryVerdict {
  SymmetryLevel level = SymmetryLevel::Weak;
  bool holds = false;
  bool classification_holds = false;
  int samples_attempted = 0;
  int samples_ok = 0;
  double max_residual = 0.0;
  std::string obstruction;  // set when a transport attempt failed
  std::string note;
};

// Constructive sampling combined with the structural casework over
// simple / abelian / direct-sum algebras.
std::vector<SymmetryVerdict> symmetry_report(const AlgebraPtr& alg,
                                             int samples, Rng& rng);

// Weights and orthogonal pure states reconstructing the given state.
std::vector<std::pair<double, State>> state_decomposition(const State& mu);

}  // namespace conelab
