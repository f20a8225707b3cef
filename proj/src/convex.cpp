#include "conelab/convex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "conelab/errors.hpp"
#include "conelab/jacobi.hpp"

namespace conelab {

namespace {

// Feasibility of zeta = convex combination of the rows listed in `support`.
bool in_convex_hull(const Eigen::MatrixXd& verts,
                    const std::vector<int>& support,
                    const Eigen::VectorXd& zeta, double tol) {
  const int k = static_cast<int>(support.size());
  const int d = static_cast<int>(verts.cols());
  LPProblem p = LPProblem::make(k);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(k);
    row[i] = -1.0;
    p.add_le(row, 0.0);  // lambda_i >= 0
  }
  for (int c = 0; c < d; ++c) {
    Eigen::VectorXd row(k);
    for (int i = 0; i < k; ++i) row[i] = verts(support[i], c);
    p.add_eq(row, zeta[c]);
  }
  p.add_eq(Eigen::VectorXd::Ones(k), 1.0);
  (void)tol;
  return lp_solve(p).status == LPStatus::Optimal;
}

// Minimal affine-fit machinery: least-squares fit of values over vertices,
// minimum-norm when the polytope does not affinely span the space.
struct AffineFit {
  AffineFunction fn;
  double residual = 0.0;
};

AffineFit fit_affine(const Polytope& p, const Eigen::VectorXd& values) {
  const int k = p.count(), d = p.dim();
  Eigen::MatrixXd m(k, d + 1);
  m.col(0).setOnes();
  m.rightCols(d) = p.vertices;
  const Eigen::VectorXd theta =
      m.completeOrthogonalDecomposition().solve(values);
  AffineFit fit;
  fit.fn.offset = theta[0];
  fit.fn.gradient = theta.tail(d);
  fit.residual = (m * theta - values).cwiseAbs().maxCoeff();
  return fit;
}

Eigen::VectorXd random_interior_point(const Polytope& p, Rng& rng) {
  const int k = p.count();
  Eigen::VectorXd w(k);
  for (int i = 0; i < k; ++i) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w[i] = -std::log(u);
  }
  w /= w.sum();
  return p.vertices.transpose() * w;
}

}  // namespace

Polytope make_polytope(Eigen::MatrixXd vertices) {
  const int k = static_cast<int>(vertices.rows());
  if (k == 0) throw InvalidPolytope("no vertices");
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if ((vertices.row(i) - vertices.row(j)).cwiseAbs().maxCoeff() < 1e-9)
        throw InvalidPolytope("duplicate vertices " + std::to_string(i) +
                              " and " + std::to_string(j));
    }
  }
  for (int i = 0; i < k && k > 1; ++i) {
    std::vector<int> others;
    for (int j = 0; j < k; ++j)
      if (j != i) others.push_back(j);
    if (in_convex_hull(vertices, others, vertices.row(i).transpose(), 1e-8))
      throw InvalidPolytope("vertex " + std::to_string(i) +
                            " is not extreme");
  }
  return Polytope{std::move(vertices)};
}

Polytope builtin_polytope(const std::string& name) {
  if (name == "triangle") {
    Eigen::MatrixXd v(3, 2);
    v << 0, 0, 1, 0, 0, 1;
    return make_polytope(v);
  }
  if (name == "square") {
    Eigen::MatrixXd v(4, 2);
    v << 1, 1, 1, -1, -1, 1, -1, -1;
    return make_polytope(v);
  }
  if (name == "pentagon") {
    Eigen::MatrixXd v(5, 2);
    for (int i = 0; i < 5; ++i) {
      const double a = M_PI / 2.0 + 2.0 * M_PI * i / 5.0;
      v(i, 0) = std::cos(a);
      v(i, 1) = std::sin(a);
    }
    return make_polytope(v);
  }
  if (name.rfind("simplex:", 0) == 0) {
    const int n = std::stoi(name.substr(8));
    if (n < 1) throw ParseError("simplex:n needs n >= 1");
    return make_polytope(Eigen::MatrixXd::Identity(n, n));
  }
  throw ParseError("unknown polytope '" + name + "'");
}

std::vector<std::string> builtin_polytope_names() {
  return {"triangle", "square", "pentagon", "simplex:n"};
}

bool contains_point(const Polytope& p, const Eigen::VectorXd& zeta,
                    double tol) {
  std::vector<int> all(p.count());
  for (int i = 0; i < p.count(); ++i) all[i] = i;
  return in_convex_hull(p.vertices, all, zeta, tol);
}

int vertex_index(const Polytope& p, const Eigen::VectorXd& omega, double tol) {
  for (int i = 0; i < p.count(); ++i) {
    if ((p.vertex(i) - omega).cwiseAbs().maxCoeff() < tol) return i;
  }
  throw NotAVertex("point is not a vertex of the polytope");
}

double e_omega_value(const Polytope& p, int omega_index,
                     const Eigen::VectorXd& zeta) {
  if (omega_index < 0 || omega_index >= p.count())
    throw NotAVertex("vertex index out of range");
  if (zeta.size() != p.dim())
    throw DimensionMismatch("query point has wrong dimension");
  if (!contains_point(p, zeta))
    throw PointOutside("query point is outside the polytope");

  const int d = p.dim();
  // Variables (offset, gradient); nonnegativity is imposed at the vertices,
  // which is exact for affine functions.
  LPProblem lp = LPProblem::make(d + 1);
  lp.c[0] = 1.0;
  lp.c.tail(d) = zeta;
  for (int j = 0; j < p.count(); ++j) {
    Eigen::VectorXd row(d + 1);
    row[0] = -1.0;
    row.tail(d) = -p.vertex(j);
    lp.add_le(row, 0.0);
  }
  Eigen::VectorXd eq(d + 1);
  eq[0] = 1.0;
  eq.tail(d) = p.vertex(omega_index);
  lp.add_eq(eq, 1.0);

  const LPSolution s = lp_solve(lp);
  if (s.status != LPStatus::Optimal)
    throw NumericalFailure("e_omega LP did not reach an optimum");
  return s.value;
}

StarStarReport star_star_check(const Polytope& p, int interior_samples,
                               Rng& rng) {
  StarStarReport report;
  report.property_holds = true;
  const int k = p.count();
  const Eigen::VectorXd centroid = p.centroid();

  for (int w = 0; w < k; ++w) {
    VertexStarReport vr;
    vr.vertex = w;
    vr.values_at_vertices.resize(k);
    for (int j = 0; j < k; ++j)
      vr.values_at_vertices[j] = e_omega_value(p, w, p.vertex(j));

    const AffineFit fit = fit_affine(p, vr.values_at_vertices);
    vr.vertex_fit_residual = fit.residual;
    vr.fit_consistent = fit.residual < 1e-8;

    vr.centroid_value = e_omega_value(p, w, centroid);
    vr.centroid_fit = fit.fn(centroid);
    vr.max_interior_gap = std::abs(vr.centroid_value - vr.centroid_fit);
    for (int s = 0; s < interior_samples; ++s) {
      const Eigen::VectorXd zeta = random_interior_point(p, rng);
      vr.max_interior_gap =
          std::max(vr.max_interior_gap,
                   std::abs(e_omega_value(p, w, zeta) - fit.fn(zeta)));
    }
    vr.affine = vr.fit_consistent && vr.max_interior_gap < 1e-8;

    vr.unique_peak = true;
    for (int j = 0; j < k; ++j) {
      if (j == w) continue;
      if (fit.fn(p.vertex(j)) >= 1.0 - 1e-8) vr.unique_peak = false;
    }
    vr.passes = vr.affine && vr.unique_peak;
    report.property_holds = report.property_holds && vr.passes;
    report.per_vertex.push_back(std::move(vr));
  }
  return report;
}

DistinguishResult perfectly_distinguishable(const Polytope& p, int w1,
                                            int w2) {
  if (w1 < 0 || w1 >= p.count() || w2 < 0 || w2 >= p.count())
    throw NotAVertex("vertex index out of range");
  const int d = p.dim();
  LPProblem lp = LPProblem::make(d + 1);
  for (int j = 0; j < p.count(); ++j) {
    Eigen::VectorXd row(d + 1);
    row[0] = 1.0;
    row.tail(d) = p.vertex(j);
    lp.add_le(row, 1.0);   // a(v_j) <= 1
    lp.add_le(-row, 0.0);  // a(v_j) >= 0
  }
  Eigen::VectorXd eq1(d + 1), eq2(d + 1);
  eq1[0] = 1.0;
  eq1.tail(d) = p.vertex(w1);
  eq2[0] = 1.0;
  eq2.tail(d) = p.vertex(w2);
  lp.add_eq(eq1, 1.0);
  lp.add_eq(eq2, 0.0);

  const LPSolution s = lp_solve(lp);
  DistinguishResult r;
  r.distinguishable = s.status == LPStatus::Optimal;
  if (r.distinguishable) {
    r.witness.offset = s.x[0];
    r.witness.gradient = s.x.tail(d);
  }
  return r;
}

std::vector<PolytopeMap> polytope_automorphisms(const Polytope& p) {
  const int k = p.count();
  if (k > 16) throw TooManyVertices("automorphism search capped at 16 vertices");
  const int d = p.dim();

  // Invariant of the affine structure: the orthogonal projector onto the
  // row space of the homogenized vertex matrix. A vertex permutation extends
  // to an affine bijection iff it leaves this matrix invariant.
  Eigen::MatrixXd m(d + 1, k);
  m.row(0).setOnes();
  m.bottomRows(d) = p.vertices.transpose();
  const Eigen::MatrixXd mmt = m * m.transpose();
  const EigenSym es = jacobi_eigensym(mmt);
  Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(d + 1, d + 1);
  const double cutoff = 1e-12 * std::max(1.0, es.values.maxCoeff());
  for (int i = 0; i < es.values.size(); ++i) {
    if (es.values[i] > cutoff)
      pinv += es.vectors.col(i) * es.vectors.col(i).transpose() / es.values[i];
  }
  const Eigen::MatrixXd gram = m.transpose() * pinv * m;  // k x k

  // Direction-space projector, used to extend maps off a lower-dimensional
  // affine hull by the identity.
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  const Eigen::VectorXd c = p.centroid();
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd dv = p.vertex(i) - c;
    scatter += dv * dv.transpose();
  }
  const EigenSym sc = jacobi_eigensym(scatter);
  Eigen::MatrixXd pdir = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (sc.values[i] > 1e-10 * std::max(1.0, sc.values.maxCoeff()))
      pdir += sc.vectors.col(i) * sc.vectors.col(i).transpose();
  }

  std::vector<PolytopeMap> group;
  std::vector<int> perm(k, -1);
  std::vector<bool> used(k, false);

  auto compatible = [&](int i, int cand) {
    if (std::abs(gram(cand, cand) - gram(i, i)) > 1e-8) return false;
    for (int t = 0; t < i; ++t) {
      if (std::abs(gram(cand, perm[t]) - gram(i, t)) > 1e-8) return false;
    }
    return true;
  };

  auto emit = [&]() {
    // Solve for the affine map realizing the permutation and verify.
    Eigen::MatrixXd lhs(k, d + 1);
    lhs.col(0).setOnes();
    lhs.rightCols(d) = p.vertices;
    Eigen::MatrixXd rhs(k, d);
    for (int i = 0; i < k; ++i) rhs.row(i) = p.vertices.row(perm[i]);
    const Eigen::MatrixXd theta =
        lhs.completeOrthogonalDecomposition().solve(rhs);  // (d+1) x d
    PolytopeMap map;
    map.offset = theta.row(0).transpose();
    map.linear = theta.bottomRows(d).transpose();
    // Identity off the affine hull keeps the map bijective.
    map.linear += Eigen::MatrixXd::Identity(d, d) - pdir;
    map.offset -= (Eigen::MatrixXd::Identity(d, d) - pdir) * c;
    for (int i = 0; i < k; ++i) {
      if ((map(p.vertex(i)) - p.vertex(perm[i])).cwiseAbs().maxCoeff() > 1e-8)
        return;  // permutation not affinely realizable
    }
    map.vertex_perm = perm;
    group.push_back(std::move(map));
  };

  std::function<void(int)> search = [&](int i) {
    if (i == k) {
      emit();
      return;
    }
    for (int cand = 0; cand < k; ++cand) {
      if (used[cand] || !compatible(i, cand)) continue;
      used[cand] = true;
      perm[i] = cand;
      search(i + 1);
      used[cand] = false;
      perm[i] = -1;
    }
  };
  search(0);
  return group;
}

Eigen::MatrixXd dualize_automorphism(const Polytope& p, const PolytopeMap& t) {
  // Verify T permutes the vertex set.
  for (int i = 0; i < p.count(); ++i) {
    bool hit = false;
    for (int j = 0; j < p.count(); ++j) {
      if ((t(p.vertex(i)) - p.vertex(j)).cwiseAbs().maxCoeff() < 1e-8)
        hit = true;
    }
    if (!hit)
      throw NotAnAutomorphism("map does not permute the polytope vertices");
  }
  const int d = p.dim();
  Eigen::MatrixXd dual = Eigen::MatrixXd::Zero(d + 1, d + 1);
  dual(0, 0) = 1.0;
  dual.block(0, 1, 1, d) = t.offset.transpose();
  dual.block(1, 1, d, d) = t.linear.transpose();
  return dual;
}

PolytopeBitSymmetry polytope_bit_symmetry(const Polytope& p) {
  PolytopeBitSymmetry out;
  const auto group = polytope_automorphisms(p);
  out.automorphisms = static_cast<int>(group.size());

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < p.count(); ++i) {
    for (int j = 0; j < p.count(); ++j) {
      if (i != j && perfectly_distinguishable(p, i, j).distinguishable)
        pairs.emplace_back(i, j);
    }
  }
  out.distinguishable_pairs = static_cast<int>(pairs.size());

  out.holds = true;
  for (const auto& a : pairs) {
    for (const auto& b : pairs) {
      bool found = false;
      for (const auto& g : group) {
        if (g.vertex_perm[a.first] == b.first &&
            g.vertex_perm[a.second] == b.second) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.holds = false;
        out.obstruction = "no automorphism maps pair (" +
                          std::to_string(a.first) + "," +
                          std::to_string(a.second) + ") to (" +
                          std::to_string(b.first) + "," +
                          std::to_string(b.second) + ")";
        return out;
      }
    }
  }
  return out;
}

}  // namespace conelab
