#include "conelab/lp.hpp"

#include <cmath>
#include <vector>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-8;

struct Tableau {
  Eigen::MatrixXd t;        // m rows of constraints + 1 cost row; last col rhs
  std::vector<int> basis;   // basic variable per constraint row
  int cols = 0;             // structural + slack + artificial columns

  double& rhs(int r) { return t(r, cols); }
  int cost_row() const { return static_cast<int>(basis.size()); }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      const double factor = t(i, c);
      if (factor != 0.0) t.row(i) -= factor * t.row(r);
    }
    basis[r] = c;
  }
};

// Bland's rule: entering = lowest eligible column, leaving = lowest basic
// variable among the minimum-ratio rows. Returns false on unboundedness.
bool run_simplex(Tableau& tb, const std::vector<bool>& forbidden) {
  const int m = static_cast<int>(tb.basis.size());
  const int cr = tb.cost_row();
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < tb.cols; ++j) {
      if (forbidden[j]) continue;
      if (tb.t(cr, j) < -kOptTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double d = tb.t(i, enter);
      if (d > kFeasTol) {
        const double ratio = tb.rhs(i) / d;
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 &&
             tb.basis[i] < tb.basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return false;
    tb.pivot(leave, enter);
  }
  throw NumericalFailure("simplex iteration limit exceeded");
}

}  // namespace

void LPProblem::add_le(const Eigen::VectorXd& row, double rhs) {
  A.conservativeResize(A.rows() + 1, Eigen::NoChange);
  A.row(A.rows() - 1) = row.transpose();
  b.conservativeResize(b.size() + 1);
  b[b.size() - 1] = rhs;
}

void LPProblem::add_eq(const Eigen::VectorXd& row, double rhs) {
  E.conservativeResize(E.rows() + 1, Eigen::NoChange);
  E.row(E.rows() - 1) = row.transpose();
  f.conservativeResize(f.size() + 1);
  f[f.size() - 1] = rhs;
}

LPSolution lp_solve(const LPProblem& p) {
  const int n = static_cast<int>(p.c.size());
  if ((p.A.rows() > 0 && p.A.cols() != n) ||
      (p.E.rows() > 0 && p.E.cols() != n) || p.A.rows() != p.b.size() ||
      p.E.rows() != p.f.size())
    throw DimensionMismatch("LP dimensions are inconsistent");

  const int mi = static_cast<int>(p.A.rows());
  const int me = static_cast<int>(p.E.rows());
  const int m = mi + me;
  // Columns: u (n), w (n), slacks (mi), artificials (m).
  const int nu = n, nw = n;
  const int cols = nu + nw + mi + m;

  Tableau tb;
  tb.cols = cols;
  tb.t = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  tb.basis.assign(m, -1);

  for (int r = 0; r < m; ++r) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(cols);
    double rhs = 0.0;
    if (r < mi) {
      row.head(n) = p.A.row(r).transpose();
      row.segment(n, n) = -p.A.row(r).transpose();
      row[nu + nw + r] = 1.0;  // slack
      rhs = p.b[r];
    } else {
      const int q = r - mi;
      row.head(n) = p.E.row(q).transpose();
      row.segment(n, n) = -p.E.row(q).transpose();
      rhs = p.f[q];
    }
    if (rhs < 0.0) {
      row = -row;
      rhs = -rhs;
    }
    row[nu + nw + mi + r] = 1.0;  // artificial, initial basis
    tb.t.row(r).head(cols) = row.transpose();
    tb.rhs(r) = rhs;
    tb.basis[r] = nu + nw + mi + r;
  }

  // Phase 1: minimize the artificial sum.
  const int cr = tb.cost_row();
  for (int j = nu + nw + mi; j < cols; ++j) tb.t(cr, j) = 1.0;
  for (int r = 0; r < m; ++r) tb.t.row(cr) -= tb.t.row(r);

  std::vector<bool> forbidden(cols, false);
  run_simplex(tb, forbidden);
  const double phase1 = -tb.rhs(cr);
  if (phase1 > 1e-7) {
    LPSolution s;
    s.status = LPStatus::Infeasible;
    return s;
  }

  // Drive leftover basic artificials out of the basis; otherwise a later
  // pivot could push one above zero and silently violate its constraint.
  // A row with no eligible pivot entry is redundant and stays inert.
  const int art_start = nu + nw + mi;
  for (int r = 0; r < m; ++r) {
    if (tb.basis[r] < art_start) continue;
    for (int j = 0; j < art_start; ++j) {
      if (std::abs(tb.t(r, j)) > 1e-9) {
        tb.pivot(r, j);
        break;
      }
    }
  }

  // Phase 2: original objective, artificials frozen.
  tb.t.row(cr).setZero();
  for (int j = 0; j < n; ++j) {
    tb.t(cr, j) = p.c[j];
    tb.t(cr, n + j) = -p.c[j];
  }
  for (int r = 0; r < m; ++r) {
    const double cb = tb.t(cr, tb.basis[r]);
    if (cb != 0.0) tb.t.row(cr) -= cb * tb.t.row(r);
  }
  for (int j = nu + nw + mi; j < cols; ++j) forbidden[j] = true;

  LPSolution s;
  if (!run_simplex(tb, forbidden)) {
    s.status = LPStatus::Unbounded;
    return s;
  }
  s.status = LPStatus::Optimal;
  s.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    const int v = tb.basis[r];
    if (v < n) s.x[v] += tb.rhs(r);
    else if (v < 2 * n) s.x[v - n] -= tb.rhs(r);
  }
  s.value = p.c.dot(s.x);
  return s;
}

}  // namespace conelab
