#include <doctest.h>

#include <cmath>

#include "conelab/errors.hpp"
#include "conelab/lp.hpp"
#include "conelab/sampling.hpp"
#include "conelab/symmetry.hpp"
#include "conelab/transition.hpp"

using namespace conelab;

TEST_CASE("atom states are sharp and pure") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  Eigen::VectorXd c(4);
  c << 1, 0, 0, 0;
  const Atom e = as_atom(make_element(alg, c));
  const State mu = atom_state(e);
  CHECK(mu(e.element) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mu(unit_element(alg)) == doctest::Approx(1.0).epsilon(1e-12));
  // mu(diag(a,b)) = a
  Eigen::VectorXd x(4);
  x << 0.3, 0.9, 0, 0;
  CHECK(mu(make_element(alg, x)) == doctest::Approx(0.3));

  // Positivity of a random atom state on sampled positive elements.
  const AlgebraPtr big = make_algebra("herm_c:3");
  Rng rng(61);
  const State nu = atom_state(random_atom(big, rng));
  for (int s = 0; s < 1000; ++s)
    CHECK(nu(random_positive(big, rng)) > -1e-12);
}

TEST_CASE("qubit transition probability between x and z eigenstates") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  // (I + sigma_x)/2 has off-diagonal entry 1/2, so the real off-diagonal
  // coordinate is 1/2 * sqrt(2).
  Eigen::VectorXd cx(4), cz(4);
  cx << 0.5, 0.5, 0.5 * std::sqrt(2.0), 0;
  cz << 1, 0, 0, 0;
  const Atom px = as_atom(make_element(alg, cx));
  const Atom pz = as_atom(make_element(alg, cz));
  CHECK(transition_probability(px, pz) == doctest::Approx(0.5));
  CHECK(transition_probability(pz, px) == doctest::Approx(0.5));
  CHECK(transition_probability(px, px) == doctest::Approx(1.0));
}

TEST_CASE("transition probabilities stay in range and are symmetric") {
  for (const std::string& spec : catalog_specs()) {
    const AlgebraPtr alg = make_algebra(spec);
    Rng rng(62);
    double worst_defect = 0.0;
    for (int s = 0; s < 500; ++s) {
      const Atom p = random_atom(alg, rng);
      const Atom q = random_atom(alg, rng);
      const double t = transition_probability(p, q);
      CHECK(t > -1e-12);
      CHECK(t < 1.0 + 1e-12);
      worst_defect = std::max(worst_defect, symmetry_defect(p, q));
    }
    CAPTURE(spec);
    CHECK(worst_defect < 1e-9);

    const Atom p = random_atom(alg, rng);
    CHECK(symmetry_defect(p, p) == 0.0);
    if (alg->rank() >= 2) {
      const Frame f = random_frame(alg, 2, rng);
      CHECK(transition_probability(f.atoms[0], f.atoms[1]) ==
            doctest::Approx(0.0).epsilon(1e-10));
      CHECK(symmetry_defect(f.atoms[0], f.atoms[1]) ==
            doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("atom-state uniqueness certificates in closed-form state spaces") {
  SUBCASE("simplex states: an LP pins every other coordinate at zero") {
    // States of the componentwise algebra are probability vectors; if
    // p_i = 1 then maximizing any other coordinate over the constraint set
    // must give exactly zero, so the atom state is the unique solution.
    const int n = 4;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        LPProblem lp = LPProblem::make(n);
        lp.c = Eigen::VectorXd::Zero(n);
        lp.c[j] = -1.0;  // maximize p_j
        for (int t = 0; t < n; ++t) {
          Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
          row[t] = -1.0;
          lp.add_le(row, 0.0);
        }
        lp.add_eq(Eigen::VectorXd::Ones(n), 1.0);
        Eigen::VectorXd pin = Eigen::VectorXd::Zero(n);
        pin[i] = 1.0;
        lp.add_eq(pin, 1.0);
        const LPSolution s = lp_solve(lp);
        REQUIRE(s.status == LPStatus::Optimal);
        CHECK(std::abs(s.value) < 1e-9);
      }
    }
  }
  SUBCASE("ball states: the peak probability gap controls the distance") {
    // Spin-factor states are (1/2, v) with |v| <= 1/2; against the atom
    // (1, u)/2 the defect 1 - mu(e) dominates |v - u/2|^2, so probability
    // one forces v = u/2.
    const AlgebraPtr alg = make_algebra("spin:5");
    Rng rng(68);
    const Atom e = random_atom(alg, rng);
    const Eigen::VectorXd u = 2.0 * e.element.coords.tail(5);
    for (int s = 0; s < 1000; ++s) {
      Eigen::VectorXd v(5);
      for (int i = 0; i < 5; ++i) v[i] = rng.gaussian();
      v *= 0.5 * std::pow(rng.uniform(), 1.0 / 5.0) / v.norm();
      Eigen::VectorXd c(6);
      c[0] = 0.5;
      c.tail(5) = v;
      const State mu = as_state(make_element(alg, c));
      const double defect = 1.0 - mu(e.element);
      CHECK(defect >= (v - 0.5 * u).squaredNorm() - 1e-12);
    }
  }
}

TEST_CASE("transition tables have unit row sums against complete frames") {
  for (const std::string& spec :
       {std::string("herm_c:3"), std::string("herm_h:2"),
        std::string("sum:herm_c:2+herm_c:2")}) {
    const AlgebraPtr alg = make_algebra(spec);
    Rng rng(63);
    const int m = alg->rank();
    const TransitionTable t =
        transition_table(random_frame(alg, m, rng), random_frame(alg, m, rng));
    for (int i = 0; i < t.probs.rows(); ++i) {
      CHECK(t.probs.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(t.probs.row(i).minCoeff() > -1e-12);
    }
  }
}

TEST_CASE("automorphism invariance of the transition probability") {
  SUBCASE("identity map leaves everything unchanged") {
    const AlgebraPtr alg = make_algebra("herm_c:2");
    Rng rng(64);
    const Atom e = random_atom(alg, rng);
    const Element a = random_element(alg, rng);
    CHECK(invariance_check(identity_automorphism(alg), e, a) == 0.0);
  }
  SUBCASE("sampled qubit unitaries") {
    const AlgebraPtr alg = make_algebra("herm_c:2");
    Rng rng(65);
    double worst = 0.0;
    for (int s = 0; s < 500; ++s) {
      const Automorphism u = haar_sample(alg, rng);
      const Atom e = random_atom(alg, rng);
      const Element a = random_element(alg, rng);
      worst = std::max(worst, invariance_check(u, e, a));
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("classical permutations are exact") {
    const AlgebraPtr alg = make_algebra("classical:4");
    Rng rng(66);
    for (int s = 0; s < 100; ++s) {
      const Automorphism u = haar_sample(alg, rng);
      const Atom e = random_atom(alg, rng);
      const Element a = random_element(alg, rng);
      CHECK(invariance_check(u, e, a) == 0.0);
    }
  }
  SUBCASE("a unit-breaking linear map is rejected") {
    const AlgebraPtr alg = make_algebra("herm_c:2");
    Automorphism bad;
    bad.algebra = alg;
    bad.op = Automorphism::ExplicitLinear{
        2.0 * Eigen::MatrixXd::Identity(4, 4),
        0.5 * Eigen::MatrixXd::Identity(4, 4)};
    Rng rng(67);
    const Atom e = random_atom(alg, rng);
    CHECK_THROWS_AS(invariance_check(bad, e, unit_element(alg)),
                    InvalidAutomorphism);
  }
}
