#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "conelab/errors.hpp"
#include "conelab/lp.hpp"

using namespace conelab;

namespace {

// Independent oracle: enumerate all basic points of {A x <= b} and take the
// best feasible one.
double brute_force_min(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                       const Eigen::VectorXd& b) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(a.rows());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Eigen::MatrixXd s(n, n);
      Eigen::VectorXd rhs(n);
      for (int i = 0; i < n; ++i) {
        s.row(i) = a.row(idx[i]);
        rhs[i] = b[idx[i]];
      }
      const Eigen::FullPivLU<Eigen::MatrixXd> lu(s);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd x = lu.solve(rhs);
      if (((a * x - b).array() < 1e-7).all())
        best = std::min(best, c.dot(x));
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("one-variable bound") {
  LPProblem p = LPProblem::make(1);
  p.c[0] = 1.0;
  Eigen::VectorXd row(1);
  row << -1.0;
  p.add_le(row, -1.0);  // x >= 1
  const LPSolution s = lp_solve(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.value == doctest::Approx(1.0));
}

TEST_CASE("contradictory bounds are infeasible") {
  LPProblem p = LPProblem::make(1);
  Eigen::VectorXd up(1), down(1);
  up << 1.0;
  down << -1.0;
  p.add_le(up, 0.0);    // x <= 0
  p.add_le(down, -1.0); // x >= 1
  CHECK(lp_solve(p).status == LPStatus::Infeasible);
}

TEST_CASE("missing bound is unbounded") {
  LPProblem p = LPProblem::make(1);
  p.c[0] = 1.0;
  Eigen::VectorXd row(1);
  row << 1.0;
  p.add_le(row, 5.0);  // x <= 5, minimize x
  CHECK(lp_solve(p).status == LPStatus::Unbounded);
}

TEST_CASE("equality constraints with free variables") {
  // min x + y  s.t.  x + 2y = 4, -x + y <= 1; along the line the objective
  // is 4 - y and y is capped at 5/3, so the optimum is 7/3.
  LPProblem p = LPProblem::make(2);
  p.c << 1.0, 1.0;
  Eigen::VectorXd eq(2), le(2);
  eq << 1.0, 2.0;
  le << -1.0, 1.0;
  p.add_eq(eq, 4.0);
  p.add_le(le, 1.0);
  const LPSolution s = lp_solve(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(std::abs(s.x[0] + 2.0 * s.x[1] - 4.0) < 1e-9);
  CHECK(s.value == doctest::Approx(7.0 / 3.0));
  CHECK(s.x[1] == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("classic cycling-prone instance terminates at the oracle optimum") {
  // Beale's example: min -3/4 x1 + 150 x2 - 1/50 x3 + 6 x4 with its three
  // inequality rows and nonnegative variables; naive pivoting cycles here.
  const int n = 4;
  Eigen::MatrixXd a(7, n);
  Eigen::VectorXd b(7);
  a.row(0) << 0.25, -60.0, -1.0 / 25.0, 9.0;
  b[0] = 0.0;
  a.row(1) << 0.5, -90.0, -1.0 / 50.0, 3.0;
  b[1] = 0.0;
  a.row(2) << 0.0, 0.0, 1.0, 0.0;
  b[2] = 1.0;
  a.row(3) << -1.0, 0.0, 0.0, 0.0;
  b[3] = 0.0;
  a.row(4) << 0.0, -1.0, 0.0, 0.0;
  b[4] = 0.0;
  a.row(5) << 0.0, 0.0, -1.0, 0.0;
  b[5] = 0.0;
  a.row(6) << 0.0, 0.0, 0.0, -1.0;
  b[6] = 0.0;
  Eigen::VectorXd c(n);
  c << -0.75, 150.0, -0.02, 6.0;

  LPProblem p = LPProblem::make(n);
  p.c = c;
  for (int i = 0; i < 7; ++i) p.add_le(a.row(i).transpose(), b[i]);
  const LPSolution s = lp_solve(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.value == doctest::Approx(-0.05).epsilon(1e-8));
  CHECK(s.value == doctest::Approx(brute_force_min(c, a, b)).epsilon(1e-8));
}

TEST_CASE("random bounded instances match the vertex-enumeration oracle") {
  // Box plus random cuts in three variables.
  std::mt19937_64 gen(91);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 3;
    Eigen::MatrixXd a(2 * n + 4, n);
    Eigen::VectorXd b(2 * n + 4);
    for (int i = 0; i < n; ++i) {
      a.row(2 * i).setZero();
      a(2 * i, i) = 1.0;
      b[2 * i] = 1.0;
      a.row(2 * i + 1).setZero();
      a(2 * i + 1, i) = -1.0;
      b[2 * i + 1] = 1.0;
    }
    for (int r = 0; r < 4; ++r) {
      for (int i = 0; i < n; ++i) a(2 * n + r, i) = normal(gen);
      b[2 * n + r] = 1.0 + std::abs(normal(gen));
    }
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = normal(gen);

    LPProblem p = LPProblem::make(n);
    p.c = c;
    for (int i = 0; i < a.rows(); ++i) p.add_le(a.row(i).transpose(), b[i]);
    const LPSolution s = lp_solve(p);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.value ==
          doctest::Approx(brute_force_min(c, a, b)).epsilon(1e-7));
    CHECK(((a * s.x - b).array() < 1e-8).all());
  }
}

TEST_CASE("dimension mismatches are rejected") {
  LPProblem p = LPProblem::make(2);
  p.A.resize(1, 3);
  p.b.resize(1);
  CHECK_THROWS_AS(lp_solve(p), DimensionMismatch);
}
