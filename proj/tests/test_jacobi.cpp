#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "conelab/jacobi.hpp"
#include "conelab/rng.hpp"

using namespace conelab;

namespace {

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  return 0.5 * (a + a.transpose());
}

}  // namespace

TEST_CASE("jacobi agrees with an independent dense solver") {
  Rng rng(21);
  for (int n : {2, 3, 5, 8, 12}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::MatrixXd a = random_symmetric(n, rng);
      const EigenSym mine = jacobi_eigensym(a);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
      Eigen::VectorXd rv = ref.eigenvalues().reverse();
      CHECK((mine.values - rv).cwiseAbs().maxCoeff() < 1e-10);
      // Reconstruction and orthogonality.
      const Eigen::MatrixXd rebuilt = mine.vectors *
                                      mine.values.asDiagonal() *
                                      mine.vectors.transpose();
      CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-10);
      const Eigen::MatrixXd vtv = mine.vectors.transpose() * mine.vectors;
      CHECK((vtv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
}

TEST_CASE("jacobi handles repeated eigenvalues") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(3, 3) = 2.0;
  const EigenSym e = jacobi_eigensym(a);
  CHECK(e.values[0] == doctest::Approx(2.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(e.values[3] == doctest::Approx(1.0));
}

TEST_CASE("min eigenvalue helper") {
  Eigen::MatrixXd a(2, 2);
  a << 3, 0, 0, -1;
  CHECK(min_eigenvalue_sym(a) == doctest::Approx(-1.0));
}
