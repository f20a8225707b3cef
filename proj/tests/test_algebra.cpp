#include <doctest.h>

#include <cmath>

#include "conelab/algebra.hpp"
#include "conelab/errors.hpp"
#include "conelab/jacobi.hpp"
#include "conelab/rng.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

using namespace conelab;

namespace {

Element coords_element(const AlgebraPtr& alg, std::initializer_list<double> c) {
  Eigen::VectorXd v(alg->dim());
  int i = 0;
  for (double x : c) v[i++] = x;
  REQUIRE(i == alg->dim());
  return make_element(alg, v);
}

}  // namespace

TEST_CASE("family dimensions and ranks") {
  CHECK(make_algebra("classical:3")->dim() == 3);
  CHECK(make_algebra("classical:3")->rank() == 3);
  CHECK(make_algebra("herm_r:4")->dim() == 10);
  CHECK(make_algebra("herm_c:2")->dim() == 4);
  CHECK(make_algebra("herm_c:2")->rank() == 2);
  CHECK(make_algebra("herm_c:5")->dim() == 25);
  CHECK(make_algebra("herm_h:3")->dim() == 15);
  CHECK(make_algebra("spin:7")->dim() == 8);
  CHECK(make_algebra("spin:7")->rank() == 2);
  CHECK(make_algebra("albert")->dim() == 27);
  CHECK(make_algebra("albert")->rank() == 3);
  const AlgebraPtr sum = make_algebra("sum:herm_c:2+classical:2");
  CHECK(sum->dim() == 6);
  CHECK(sum->rank() == 4);
}

TEST_CASE("spec strings round trip and invalid kinds are rejected") {
  for (const std::string& s :
       {std::string("classical:3"), std::string("herm_r:5"),
        std::string("herm_c:2"), std::string("herm_h:3"), std::string("spin:9"),
        std::string("albert"), std::string("sum:spin:4+spin:4"),
        std::string("sum:herm_c:2+classical:2")}) {
    CHECK(AlgebraKind::parse(s).to_string() == s);
  }
  CHECK_THROWS_AS(make_algebra("spin:1"), InvalidKind);
  CHECK_THROWS_AS(make_algebra("classical:0"), InvalidKind);
  CHECK_THROWS_AS(make_algebra("herm_r:1"), InvalidKind);
  CHECK_THROWS_AS(make_algebra("sum:sum:spin:2+spin:2+spin:2"), InvalidKind);
  CHECK_THROWS_AS(make_algebra("nonsense"), ParseError);
}

TEST_CASE("classical product is componentwise") {
  const AlgebraPtr alg = make_algebra("classical:3");
  const Element a = coords_element(alg, {1, 2, 3});
  const Element b = coords_element(alg, {4, 5, 6});
  const Element p = jordan_mul(a, b);
  CHECK(p.coords[0] == 4.0);
  CHECK(p.coords[1] == 10.0);
  CHECK(p.coords[2] == 18.0);
  CHECK(unit_element(alg).coords.isApprox(Eigen::Vector3d::Ones()));
}

TEST_CASE("diagonal idempotents in the complex family") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  const Element p = coords_element(alg, {1, 0, 0, 0});  // diag(1,0)
  const Element q = coords_element(alg, {0, 1, 0, 0});  // diag(0,1)
  CHECK(tnorm(sub(jordan_mul(p, p), p)) < 1e-15);
  CHECK(trace_form(p, q) == doctest::Approx(0.0));
  CHECK(trace_form(p, unit_element(alg)) == doctest::Approx(1.0));
}

TEST_CASE("spin factor products and traces") {
  const AlgebraPtr alg = make_algebra("spin:3");
  const Element a = coords_element(alg, {0, 1, 0, 0});
  const Element sq = jordan_mul(a, a);
  CHECK(sq.coords[0] == doctest::Approx(1.0));
  CHECK(sq.coords.tail(3).norm() == doctest::Approx(0.0));
  const Element unit = coords_element(alg, {1, 0, 0, 0});
  CHECK(trace_form(unit, unit) == doctest::Approx(2.0));
}

TEST_CASE("trace of the unit is the rank everywhere") {
  for (const std::string& spec : catalog_specs()) {
    const AlgebraPtr alg = make_algebra(spec);
    const Element u = unit_element(alg);
    CHECK(trace_form(u, u) == doctest::Approx(alg->rank()));
    CHECK(trace_of(u) == doctest::Approx(alg->rank()));
  }
}

TEST_CASE("positivity and sup norm on diagonal examples") {
  const AlgebraPtr alg = make_algebra("herm_c:2");
  const Element a = coords_element(alg, {3, -1, 0, 0});
  CHECK_FALSE(is_positive(a));
  CHECK(norm_inf(a) == doctest::Approx(3.0));
  CHECK(is_positive(unit_element(alg)));
  CHECK(norm_inf(unit_element(alg)) == doctest::Approx(1.0));

  const AlgebraPtr spin = make_algebra("spin:3");
  Eigen::VectorXd c(4);
  c << 1, 1, 0, 0;
  const Element s = make_element(spin, c);
  CHECK(is_positive(s));
  CHECK(norm_inf(s) == doctest::Approx(2.0));
}

TEST_CASE("algebra axioms on sampled pairs across the catalog") {
  for (const std::string& spec : catalog_specs()) {
    const AlgebraPtr alg = make_algebra(spec);
    Rng rng(31);
    double worst_comm = 0.0, worst_jordan = 0.0, worst_unit = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const Element a = random_element(alg, rng);
      const Element b = random_element(alg, rng);
      worst_comm =
          std::max(worst_comm, tnorm(sub(jordan_mul(a, b), jordan_mul(b, a))));
      const Element a2 = jordan_mul(a, a);
      const Element lhs = jordan_mul(jordan_mul(a, b), a2);
      const Element rhs = jordan_mul(a, jordan_mul(b, a2));
      const double scale_ = std::max(1.0, tnorm(a2) * tnorm(a) * tnorm(b));
      worst_jordan = std::max(worst_jordan, tnorm(sub(lhs, rhs)) / scale_);
      worst_unit = std::max(
          worst_unit, tnorm(sub(jordan_mul(unit_element(alg), a), a)));
    }
    CHECK(worst_comm < 1e-12);
    CHECK(worst_jordan < 1e-9);
    CHECK(worst_unit < 1e-12);
  }
}

TEST_CASE("trace form gram matrix is diagonal positive definite") {
  for (const std::string& spec :
       {std::string("herm_r:3"), std::string("herm_c:3"),
        std::string("herm_h:2"), std::string("spin:4"), std::string("albert"),
        std::string("sum:herm_c:2+classical:2")}) {
    const AlgebraPtr alg = make_algebra(spec);
    const int d = alg->dim();
    Eigen::MatrixXd gram(d, d);
    for (int i = 0; i < d; ++i) {
      Eigen::VectorXd ei = Eigen::VectorXd::Zero(d);
      ei[i] = 1.0;
      const Element a = make_element(alg, ei);
      for (int j = 0; j < d; ++j) {
        Eigen::VectorXd ej = Eigen::VectorXd::Zero(d);
        ej[j] = 1.0;
        gram(i, j) = trace_of(jordan_mul(a, make_element(alg, ej)));
      }
    }
    CHECK((gram - gram.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    // Matches the cached diagonal (the fast trace_form path).
    CHECK((gram - Eigen::MatrixXd(alg->gram_diag().asDiagonal()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(min_eigenvalue_sym(gram) > 0.0);
  }
}

TEST_CASE("algebra mismatch is rejected") {
  const AlgebraPtr a = make_algebra("classical:3");
  const AlgebraPtr b = make_algebra("classical:4");
  CHECK_THROWS_AS(
      jordan_mul(unit_element(a), unit_element(b)), AlgebraMismatch);
}
