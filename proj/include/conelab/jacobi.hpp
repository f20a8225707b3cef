#pragma once

#include <Eigen/Dense>

namespace conelab {

struct EigenSym {
  Eigen::VectorXd values;   // sorted descending
  Eigen::MatrixXd vectors;  // column k pairs with values[k]
};

// Cyclic Jacobi for dense real symmetric matrices. Deterministic sweep
// order, converges to off-diagonal Frobenius norm below 1e-14 * scale.
EigenSym jacobi_eigensym(const Eigen::MatrixXd& a);

double min_eigenvalue_sym(const Eigen::MatrixXd& a);

}  // namespace conelab
