#pragma once

#include <Eigen/Dense>

namespace conelab {

// min c.x  s.t.  A x <= b,  E x = f,  x free.
struct LPProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd E;
  Eigen::VectorXd f;

  static LPProblem make(int nvars) {
    LPProblem p;
    p.c = Eigen::VectorXd::Zero(nvars);
    p.A.resize(0, nvars);
    p.b.resize(0);
    p.E.resize(0, nvars);
    p.f.resize(0);
    return p;
  }
  void add_le(const Eigen::VectorXd& row, double rhs);
  void add_eq(const Eigen::VectorXd& row, double rhs);
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
};

// Dense two-phase tableau simplex with Bland's rule; free variables are
// split into positive parts. Deterministic; no scaling pass.
LPSolution lp_solve(const LPProblem& p);

}  // namespace conelab
