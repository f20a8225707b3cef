#include <doctest.h>

#include <cmath>

#include "conelab/errors.hpp"
#include "conelab/logic.hpp"
#include "conelab/sampling.hpp"
#include "conelab/symmetry.hpp"

using namespace conelab;

namespace {

Element diag2(const AlgebraPtr& alg, double a, double b) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(alg->dim());
  c[0] = a;
  c[1] = b;
  return make_element(alg, c);
}

}  // namespace

TEST_CASE("effect extremality") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  CHECK(is_effect_extreme(diag2(alg, 1, 0)));
  CHECK_FALSE(is_effect_extreme(scale(unit_element(alg), 0.5)));
  CHECK_THROWS_AS(is_effect_extreme(diag2(alg, 3, -1)), NotAnEffect);

  // Conjugating a projector by a sampled unitary preserves extremality.
  const AlgebraPtr big = make_algebra("herm_c:3");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(9);
  c[0] = c[1] = 1.0;
  Rng rng(51);
  for (int s = 0; s < 20; ++s) {
    const Automorphism u = haar_sample(big, rng);
    CHECK(is_effect_extreme(apply(u, make_element(big, c))));
  }
}

TEST_CASE("orthocomplement") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  const Idempotent p = as_idempotent(diag2(alg, 1, 0));
  const Idempotent pc = orthocomplement(p);
  CHECK((pc.element.coords - diag2(alg, 0, 1).coords).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((orthocomplement(pc).element.coords - p.element.coords)
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  const Idempotent zero = as_idempotent(zero_element(alg));
  CHECK((orthocomplement(zero).element.coords - unit_element(alg).coords)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // Spin atom complement flips the vector part.
  const AlgebraPtr spin = make_algebra("spin:4");
  Rng rng(52);
  const Atom e = random_atom(spin, rng);
  const Idempotent ec = orthocomplement(Idempotent{e.element});
  CHECK(ec.element.coords[0] == doctest::Approx(0.5));
  CHECK((ec.element.coords.tail(4) + e.element.coords.tail(4))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK(tnorm(sub(jordan_mul(ec.element, ec.element), ec.element)) < 1e-12);
}

TEST_CASE("the three orthogonality tests agree") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  const Atom p = as_atom(diag2(alg, 1, 0));
  const Atom q = as_atom(diag2(alg, 0, 1));
  const OrthogonalityReport r = are_orthogonal(p, q);
  CHECK(r.orthogonal);
  CHECK(r.sum_below_unit);
  CHECK(r.forward_zero);
  CHECK(r.backward_zero);

  const OrthogonalityReport same = are_orthogonal(p, p);
  CHECK_FALSE(same.orthogonal);

  const AlgebraPtr spin = make_algebra("spin:3");
  Rng rng(53);
  const Atom e = random_atom(spin, rng);
  const Atom ec{orthocomplement(Idempotent{e.element}).element};
  CHECK(are_orthogonal(e, ec).orthogonal);
}

TEST_CASE("orthogonality agreement over sampled pairs") {
  for (const std::string& spec : catalog_specs()) {
    const AlgebraPtr alg = make_algebra(spec);
    Rng rng(54);
    int failures = 0;
    for (int s = 0; s < 200; ++s) {
      try {
        if (s % 2 == 0 && alg->rank() >= 2) {
          const Frame f = random_frame(alg, 2, rng);
          if (!are_orthogonal(f.atoms[0], f.atoms[1]).orthogonal) ++failures;
        } else {
          const Atom p = random_atom(alg, rng);
          const Atom q = random_atom(alg, rng);
          are_orthogonal(p, q);
        }
      } catch (const InconsistentOrthogonality&) {
        ++failures;
      }
    }
    CAPTURE(spec);
    CHECK(failures == 0);
  }
}

TEST_CASE("nearly orthogonal atoms are surfaced as a tolerance conflict") {
  // A pair with transition probability 1e-10 sits between the tolerance
  // scales of the three tests: the pairing looks orthogonal at 1e-8 while
  // the sum exceeds the unit by sqrt(1e-10). That disagreement must raise.
  const AlgebraPtr alg = make_algebra("herm_c:2");
  const double eps = 1e-5;
  Eigen::VectorXd cp(4), cq(4);
  cp << 1, 0, 0, 0;
  // Projector onto (eps, sqrt(1-eps^2)).
  const double a = eps * eps, b = 1.0 - eps * eps;
  const double off = eps * std::sqrt(1.0 - eps * eps);
  cq << a, b, off * std::sqrt(2.0), 0;
  const Atom p = as_atom(make_element(alg, cp));
  const Atom q = as_atom(make_element(alg, cq));
  CHECK(transition_probability(p, q) == doctest::Approx(1e-10).epsilon(1e-2));
  CHECK_THROWS_AS(are_orthogonal(p, q), InconsistentOrthogonality);
}

TEST_CASE("completing a non-frame is rejected") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  Rng rng(50);
  Frame bogus;
  bogus.atoms.push_back(random_atom(alg, rng));
  Atom second = random_atom(alg, rng);
  while (transition_probability(bogus.atoms[0], second) < 0.05)
    second = random_atom(alg, rng);
  bogus.atoms.push_back(second);  // not orthogonal, bypassing validation
  CHECK_THROWS_AS(complete_frame(alg, bogus), InvalidFrame);
}

TEST_CASE("frame completion") {
  SUBCASE("diagonal start in the complex family") {
    const AlgebraPtr alg = make_algebra("herm_c:2");
    Frame partial;
    partial.atoms.push_back(as_atom(diag2(alg, 1, 0)));
    const Frame full = complete_frame(alg, partial);
    CHECK(full.size() == 2);
    CHECK((full.atoms[1].element.coords - diag2(alg, 0, 1).coords)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  SUBCASE("empty frame yields a full basis frame") {
    const AlgebraPtr alg = make_algebra("classical:3");
    const Frame full = complete_frame(alg, Frame{});
    CHECK(full.size() == 3);
    Element sum = zero_element(alg);
    for (const Atom& a : full.atoms) sum = add(sum, a.element);
    CHECK(tnorm(sub(sum, unit_element(alg))) < 1e-12);
  }
  SUBCASE("random atom start everywhere in the catalog") {
    for (const std::string& spec : catalog_specs()) {
      const AlgebraPtr alg = make_algebra(spec);
      Rng rng(55);
      Frame partial;
      partial.atoms.push_back(random_atom(alg, rng));
      const Frame full = complete_frame(alg, partial, rng.next_u64());
      CAPTURE(spec);
      CHECK(full.size() == alg->rank());
      for (int i = 0; i < full.size(); ++i)
        for (int j = i + 1; j < full.size(); ++j)
          CHECK(are_orthogonal(full.atoms[i], full.atoms[j]).orthogonal);
    }
  }
}

TEST_CASE("information capacity and frame-size rigidity") {
  CHECK(information_capacity(make_algebra("herm_c:4")) == 4);
  CHECK(information_capacity(make_algebra("spin:9")) == 2);
  CHECK(information_capacity(make_algebra("classical:6")) == 6);

  // Direct-sum ranks add up, cross-checked by counting the atoms of a
  // completed empty frame.
  const AlgebraPtr mixed = make_algebra("sum:herm_c:2+classical:2");
  CHECK(information_capacity(mixed) == 4);
  CHECK(complete_frame(mixed, Frame{}).size() == 4);

  for (const std::string& spec : catalog_specs()) {
    const AlgebraPtr alg = make_algebra(spec);
    Rng rng(56);
    for (int s = 0; s < 100; ++s) {
      const SpectralDecomposition d =
          spectral_decompose(random_element(alg, rng), rng.next_u64());
      CHECK(static_cast<int>(d.atoms.size()) == alg->rank());
    }
  }
}

TEST_CASE("lattice meet and join") {
  const AlgebraPtr alg = make_algebra("herm_c:3");
  Eigen::VectorXd pa = Eigen::VectorXd::Zero(9), qa = Eigen::VectorXd::Zero(9);
  pa[0] = pa[1] = 1.0;  // diag(1,1,0)
  qa[1] = qa[2] = 1.0;  // diag(0,1,1)
  const Idempotent p = as_idempotent(make_element(alg, pa));
  const Idempotent q = as_idempotent(make_element(alg, qa));
  const Idempotent meet = lattice_meet(p, q);
  Eigen::VectorXd expect = Eigen::VectorXd::Zero(9);
  expect[1] = 1.0;
  CHECK((meet.element.coords - expect).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(cone_leq(meet.element, p.element));
  CHECK(cone_leq(meet.element, q.element));

  // p and its complement meet at zero.
  const Idempotent bottom = lattice_meet(p, orthocomplement(p));
  CHECK(tnorm(bottom.element) < 1e-10);

  // Join of complementary pieces is the unit.
  const Idempotent top = lattice_join(p, orthocomplement(p));
  CHECK(tnorm(sub(top.element, unit_element(alg))) < 1e-10);
}

TEST_CASE("meet and join satisfy commutativity and the lattice bounds") {
  for (const std::string& spec :
       {std::string("herm_c:3"), std::string("herm_r:4"),
        std::string("albert")}) {
    const AlgebraPtr alg = make_algebra(spec);
    const int m = alg->rank();
    Rng rng(49);
    for (int s = 0; s < 20; ++s) {
      // Idempotents built from two random frames so they need not commute.
      const Frame f1 = random_frame(alg, m, rng);
      const Frame f2 = random_frame(alg, m, rng);
      Element p = zero_element(alg), q = zero_element(alg);
      const int np = 1 + rng.uniform_int(m), nq = 1 + rng.uniform_int(m);
      for (int i = 0; i < np; ++i) p = add(p, f1.atoms[i].element);
      for (int i = 0; i < nq; ++i) q = add(q, f2.atoms[i].element);
      const Idempotent ip{p}, iq{q};

      const Idempotent meet = lattice_meet(ip, iq);
      const Idempotent meet_flip = lattice_meet(iq, ip);
      CHECK(tnorm(sub(meet.element, meet_flip.element)) < 1e-8);
      CHECK(cone_leq(meet.element, p));
      CHECK(cone_leq(meet.element, q));
      CHECK(tnorm(sub(jordan_mul(meet.element, meet.element), meet.element)) <
            1e-8);

      const Idempotent join = lattice_join(ip, iq);
      CHECK(cone_leq(p, join.element));
      CHECK(cone_leq(q, join.element));
      CHECK(tnorm(sub(jordan_mul(join.element, join.element), join.element)) <
            1e-8);
    }
  }
}

TEST_CASE("meet of distinct atoms vanishes, with a brute-force cross-check") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  Rng rng(57);
  const Atom p = random_atom(alg, rng);
  Atom q = random_atom(alg, rng);
  while (tnorm(sub(p.element, q.element)) < 1e-3) q = random_atom(alg, rng);
  const Idempotent meet = lattice_meet(Idempotent{p.element},
                                       Idempotent{q.element});
  CHECK(tnorm(meet.element) < 1e-8);

  // Brute force over the idempotents of the qubit algebra: only zero can sit
  // below both atoms, so the computed meet is maximal.
  for (int s = 0; s < 500; ++s) {
    const Atom r = random_atom(alg, rng);
    const bool below_both =
        cone_leq(r.element, p.element) && cone_leq(r.element, q.element);
    CHECK_FALSE(below_both);
  }
}

TEST_CASE("orthomodularity on comparable idempotent pairs") {
  for (const std::string& spec :
       {std::string("herm_c:3"), std::string("herm_r:4"),
        std::string("classical:5"), std::string("albert")}) {
    const AlgebraPtr alg = make_algebra(spec);
    const int m = alg->rank();
    if (m < 2) continue;
    Rng rng(58);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const Frame f = random_frame(alg, m, rng);
      const int np = 1 + rng.uniform_int(m - 1);
      const int nq = np + 1 + rng.uniform_int(m - np);
      Element p = zero_element(alg), q = zero_element(alg);
      for (int i = 0; i < np; ++i) p = add(p, f.atoms[i].element);
      for (int i = 0; i < std::min(nq, m); ++i)
        q = add(q, f.atoms[i].element);
      const Idempotent ip{p}, iq{q};
      REQUIRE(cone_leq(p, q));
      const Idempotent rest = lattice_meet(iq, orthocomplement(ip));
      const Idempotent back = lattice_join(ip, rest);
      worst = std::max(worst, tnorm(sub(back.element, q)));
    }
    CAPTURE(spec);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("atoms are exactly the trace-one extreme effects") {
  for (const std::string& spec : catalog_specs()) {
    const AlgebraPtr alg = make_algebra(spec);
    Rng rng(59);
    const Atom e = random_atom(alg, rng);
    CHECK(is_effect_extreme(e.element));
    CHECK(trace_of(e.element) == doctest::Approx(1.0).epsilon(1e-10));
    const Eigen::VectorXd eigs = eigenvalues_of(e.element);
    CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-8));
    for (int i = 1; i < eigs.size(); ++i) CHECK(std::abs(eigs[i]) < 1e-8);

    // A rank-two idempotent is extreme but not an atom.
    if (alg->rank() >= 2) {
      const Frame f = random_frame(alg, 2, rng);
      const Element two = add(f.atoms[0].element, f.atoms[1].element);
      CHECK(is_effect_extreme(two));
      CHECK_THROWS_AS(as_atom(two), NotAnAtom);
    }
  }
}
