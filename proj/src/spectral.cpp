#include "conelab/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "conelab/errors.hpp"
#include "conelab/jacobi.hpp"
#include "conelab/rng.hpp"

namespace conelab {

namespace {

constexpr double kClusterRel = 1e-8;

// ---------------------------------------------------------------------------
// Real embedding of R/C/H Hermitian matrices: each scalar entry becomes its
// left-multiplication matrix in Cayley-Dickson coordinates. Associativity
// (absent for octonions) makes this a faithful algebra map for mu in {1,2,4}.

Eigen::MatrixXd left_mult_block(const Hyper& q) {
  const int mu = q.dim;
  const HyperTable& t = hyper_table(mu);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(mu, mu);
  for (int c = 0; c < mu; ++c) {
    if (q.c[c] == 0.0) continue;
    for (int j = 0; j < mu; ++j) {
      b(t.index[c][j], j) += t.sign[c][j] * q.c[c];
    }
  }
  return b;
}

Hyper unembed_block(const Eigen::MatrixXd& block, int mu) {
  const HyperTable& t = hyper_table(mu);
  Hyper q = Hyper::zero(mu);
  for (int c = 0; c < mu; ++c) {
    // <block, L(e_c)>_F / mu
    double s = 0.0;
    for (int j = 0; j < mu; ++j) s += t.sign[c][j] * block(t.index[c][j], j);
    q.c[c] = s / mu;
  }
  return q;
}

Eigen::MatrixXd embed_real(const HMatrix& m) {
  const int n = m.n, mu = m.hdim;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n * mu, n * mu);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.block(i * mu, j * mu, mu, mu) = left_mult_block(m.at(i, j));
  return r;
}

HMatrix unembed_real(const Eigen::MatrixXd& r, int n, int mu) {
  HMatrix m(n, mu);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = unembed_block(r.block(i * mu, j * mu, mu, mu), mu);
  return m;
}

// Peel rank-many unit columns off a Hermitian projector; each becomes one
// atom of the cluster eigenspace.
std::vector<HMatrix> split_projector(HMatrix p, int rank) {
  std::vector<HMatrix> atoms;
  const int n = p.n;
  for (int step = 0; step < rank; ++step) {
    int jbest = 0;
    double dbest = -1.0;
    for (int j = 0; j < n; ++j) {
      const double d = p.at(j, j).re();
      if (d > dbest) {
        dbest = d;
        jbest = j;
      }
    }
    if (dbest < 1e-10)
      throw SpectralFailure("projector column extraction degenerated");
    std::vector<Hyper> w(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] = p.at(i, jbest);
      norm2 += hnorm2(w[i]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : w) x = hscale(x, inv);
    HMatrix atom(n, p.hdim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) atom.at(i, j) = hmul(w[i], hconj(w[j]));
    for (std::size_t k = 0; k < p.e.size(); ++k)
      p.e[k] = hsub(p.e[k], atom.e[k]);
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

struct Cluster {
  double value;
  int count;  // real multiplicity
  int first;  // first index in the sorted eigenvalue list
};

std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXd& vals,
                                         double tol) {
  std::vector<Cluster> cs;
  int i = 0;
  const int n = static_cast<int>(vals.size());
  while (i < n) {
    int j = i + 1;
    while (j < n && vals[j - 1] - vals[j] < tol) ++j;
    Cluster c;
    c.first = i;
    c.count = j - i;
    c.value = vals.segment(i, j - i).mean();
    cs.push_back(c);
    i = j;
  }
  return cs;
}

SpectralDecomposition decompose_matrix_family(const Element& a) {
  const AlgebraPtr& alg = a.algebra;
  const int n = alg->kind().n;
  const int mu = family_hyper_dim(alg->kind().family);
  const Eigen::MatrixXd real = embed_real(to_hmatrix(a));
  const EigenSym eig = jacobi_eigensym(real);

  const double scale =
      std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  const auto clusters = cluster_eigenvalues(eig.values, kClusterRel * scale);

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.atoms.reserve(n);
  int pos = 0;
  for (const Cluster& c : clusters) {
    if (c.count % mu != 0)
      throw SpectralFailure("eigenvalue multiplicity inconsistent with ring");
    const int k = c.count / mu;
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(real.rows(), real.cols());
    for (int t = 0; t < c.count; ++t) {
      const auto v = eig.vectors.col(c.first + t);
      proj.noalias() += v * v.transpose();
    }
    const HMatrix kproj = unembed_real(proj, n, mu);
    for (HMatrix& atom : split_projector(kproj, k)) {
      out.eigenvalues[pos] = c.value;
      out.atoms.push_back(from_hmatrix(alg, atom));
      ++pos;
    }
  }
  if (pos != n) throw SpectralFailure("frame size mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Spin factor: (t, v) has eigenvalues t +/- |v| with atoms (1, +/-v/|v|)/2.

SpectralDecomposition decompose_spin(const Element& a) {
  const AlgebraPtr& alg = a.algebra;
  const int k = alg->kind().n;
  const double t = a.coords[0];
  Eigen::VectorXd v = a.coords.tail(k);
  const double r = v.norm();
  Eigen::VectorXd u;
  if (r < 1e-300) {
    u = Eigen::VectorXd::Zero(k);
    u[0] = 1.0;
  } else {
    u = v / r;
  }
  SpectralDecomposition out;
  out.eigenvalues.resize(2);
  out.eigenvalues << t + r, t - r;
  Eigen::VectorXd cp(k + 1), cm(k + 1);
  cp[0] = 0.5;
  cp.tail(k) = 0.5 * u;
  cm[0] = 0.5;
  cm.tail(k) = -0.5 * u;
  out.atoms.push_back(Element{alg, std::move(cp)});
  out.atoms.push_back(Element{alg, std::move(cm)});
  return out;
}

SpectralDecomposition decompose_classical(const Element& a) {
  const AlgebraPtr& alg = a.algebra;
  const int n = alg->dim();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a.coords[i] > a.coords[j]; });
  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a.coords[order[k]];
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[order[k]] = 1.0;
    out.atoms.push_back(Element{alg, std::move(e)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exceptional algebra: eigenvalues from the characteristic cubic (Newton's
// identities on tr a, tr a^2, tr a^3), atoms from Frobenius covariants.
// Degenerate clusters are split with a seeded random element compressed to
// the cluster eigenspace by the quadratic representation.

// The characteristic cubic (Newton's identities on tr a, tr a^2, tr a^3)
// identifies the spectrum, but root extraction from the polynomial loses
// half the precision at a double root. The multiplication operator L_a is
// symmetric for the trace form and carries s1 and s3 as its extreme
// eigenvalues (the rest of its Peirce spectrum consists of midpoints), so
// the Jacobi solver plus the exact trace recovers all three at full
// precision.
Eigen::Vector3d albert_eigenvalues(const Element& a) {
  const AlgebraPtr& alg = a.algebra;
  Eigen::MatrixXd mult(27, 27);
  for (int j = 0; j < 27; ++j) {
    Eigen::VectorXd ej = Eigen::VectorXd::Zero(27);
    ej[j] = 1.0;
    mult.col(j) = jordan_mul(a, Element{alg, std::move(ej)}).coords;
  }
  const EigenSym eig = jacobi_eigensym(mult);
  const double s1 = eig.values[0];
  const double s3 = eig.values[26];
  const double s2 = trace_of(a) - s1 - s3;
  Eigen::Vector3d lam(s1, s2, s3);
  std::sort(lam.data(), lam.data() + 3, std::greater<double>());
  return lam;
}

Element quad_rep(const Element& p, const Element& z) {
  // U_p(z) = 2 p o (p o z) - (p o p) o z
  const Element pz = jordan_mul(p, z);
  return sub(scale(jordan_mul(p, pz), 2.0), jordan_mul(jordan_mul(p, p), z));
}

Element frobenius_covariant(const Element& a, double sk, double sj,
                            double sl) {
  const Element u = unit_element(a.algebra);
  const Element f1 = sub(a, scale(u, sj));
  const Element f2 = sub(a, scale(u, sl));
  return scale(jordan_mul(f1, f2), 1.0 / ((sk - sj) * (sk - sl)));
}

double idem_residual(const Element& p) {
  return tnorm(sub(jordan_mul(p, p), p));
}

SpectralDecomposition decompose_albert(const Element& a,
                                       std::uint64_t split_seed, int depth) {
  const AlgebraPtr& alg = a.algebra;
  const Eigen::Vector3d lam = albert_eigenvalues(a);
  const double scale_ = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double ctol = kClusterRel * scale_;

  SpectralDecomposition out;
  out.eigenvalues = lam;
  const bool close01 = lam[0] - lam[1] < ctol;
  const bool close12 = lam[1] - lam[2] < ctol;

  if (!close01 && !close12) {
    out.atoms.push_back(frobenius_covariant(a, lam[0], lam[1], lam[2]));
    out.atoms.push_back(frobenius_covariant(a, lam[1], lam[0], lam[2]));
    out.atoms.push_back(frobenius_covariant(a, lam[2], lam[0], lam[1]));
    return out;
  }

  if (close01 && close12) {
    // Scalar multiple of the unit: any fixed frame works.
    const double v = lam.mean();
    out.eigenvalues.setConstant(v);
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(27);
      c[i] = 1.0;
      out.atoms.push_back(Element{alg, std::move(c)});
    }
    return out;
  }

  // One double eigenvalue s (cluster) and a simple one t.
  const double s = close01 ? 0.5 * (lam[0] + lam[1]) : 0.5 * (lam[1] + lam[2]);
  const double t = close01 ? lam[2] : lam[0];
  const Element u = unit_element(alg);
  const Element shifted = sub(a, scale(u, s));
  Element psingle = scale(jordan_mul(shifted, shifted), 1.0 / ((t - s) * (t - s)));
  const Element pcluster = sub(u, psingle);

  Rng rng(split_seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::VectorXd zc(27);
    for (int i = 0; i < 27; ++i) zc[i] = rng.gaussian();
    const Element r = quad_rep(pcluster, Element{alg, std::move(zc)});
    const Eigen::Vector3d rl = albert_eigenvalues(r);
    const double rscale = std::max(1.0, rl.cwiseAbs().maxCoeff());
    // Need the two in-cluster eigenvalues distinct, nonzero and separated
    // from the compressed-out zero.
    if (rl[0] - rl[1] < 1e-4 * rscale || rl[1] - rl[2] < 1e-4 * rscale)
      continue;
    // The zero eigenvalue of r belongs to the complement; keep the two
    // covariants whose eigenvalue is farthest from zero.
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
      return std::abs(rl[i]) > std::abs(rl[j]);
    });
    const int i1 = idx[0], i2 = idx[1];
    auto other = [&](int k1, int k2) { return 3 - k1 - k2; };
    const Element e1 = frobenius_covariant(r, rl[i1], rl[i2], rl[other(i1, i2)]);
    const Element e2 = frobenius_covariant(r, rl[i2], rl[i1], rl[other(i1, i2)]);
    if (idem_residual(e1) > 1e-7 || idem_residual(e2) > 1e-7) continue;
    if (close01) {
      out.eigenvalues << s, s, t;
      out.atoms = {e1, e2, psingle};
    } else {
      out.eigenvalues << t, s, s;
      out.atoms = {psingle, e1, e2};
    }
    return out;
  }

  // Last resort pinned by the degenerate-input policy: tiny seeded
  // perturbation, flagged in the result.
  if (depth >= 2) throw SpectralFailure("degenerate exceptional element");
  Eigen::VectorXd noise(27);
  Rng prng(split_seed ^ 0xabcdef);
  for (int i = 0; i < 27; ++i) noise[i] = 1e-10 * prng.gaussian();
  SpectralDecomposition pert =
      decompose_albert(Element{alg, a.coords + noise}, split_seed + 1, depth + 1);
  pert.perturbed = true;
  return pert;
}

SpectralDecomposition decompose_direct_sum(const Element& a,
                                           std::uint64_t split_seed) {
  const AlgebraPtr& alg = a.algebra;
  struct Piece {
    double value;
    int factor;
    Element atom;
  };
  std::vector<Piece> pieces;
  bool perturbed = false;
  for (int i = 0; i < alg->num_factors(); ++i) {
    SpectralDecomposition d =
        spectral_decompose(factor_part(a, i), split_seed + 1000003u * i);
    perturbed = perturbed || d.perturbed;
    for (int k = 0; k < d.eigenvalues.size(); ++k)
      pieces.push_back({d.eigenvalues[k], i, std::move(d.atoms[k])});
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& x, const Piece& y) { return x.value > y.value; });
  SpectralDecomposition out;
  out.perturbed = perturbed;
  out.eigenvalues.resize(static_cast<int>(pieces.size()));
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    out.eigenvalues[static_cast<int>(k)] = pieces[k].value;
    out.atoms.push_back(
        embed_factor(alg, pieces[k].factor, pieces[k].atom));
  }
  return out;
}

}  // namespace

SpectralDecomposition spectral_decompose(const Element& a,
                                         std::uint64_t split_seed) {
  switch (a.algebra->kind().family) {
    case Family::Classical: return decompose_classical(a);
    case Family::SpinFactor: return decompose_spin(a);
    case Family::RealSymmetric:
    case Family::ComplexHermitian:
    case Family::QuaternionHermitian: return decompose_matrix_family(a);
    case Family::Albert: return decompose_albert(a, split_seed, 0);
    case Family::DirectSum: return decompose_direct_sum(a, split_seed);
  }
  throw SpectralFailure("unknown family");
}

Eigen::VectorXd eigenvalues_of(const Element& a) {
  switch (a.algebra->kind().family) {
    case Family::Classical: {
      Eigen::VectorXd v = a.coords;
      std::sort(v.data(), v.data() + v.size(), std::greater<double>());
      return v;
    }
    case Family::SpinFactor: {
      const int k = a.algebra->kind().n;
      const double r = a.coords.tail(k).norm();
      Eigen::VectorXd v(2);
      v << a.coords[0] + r, a.coords[0] - r;
      return v;
    }
    case Family::RealSymmetric:
    case Family::ComplexHermitian:
    case Family::QuaternionHermitian: {
      const int mu = family_hyper_dim(a.algebra->kind().family);
      const EigenSym eig = jacobi_eigensym(embed_real(to_hmatrix(a)));
      const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
      const auto clusters =
          cluster_eigenvalues(eig.values, kClusterRel * scale);
      Eigen::VectorXd v(a.algebra->rank());
      int pos = 0;
      for (const Cluster& c : clusters) {
        if (c.count % mu != 0)
          throw SpectralFailure("eigenvalue multiplicity inconsistent with ring");
        for (int t = 0; t < c.count / mu; ++t) v[pos++] = c.value;
      }
      return v;
    }
    case Family::Albert: {
      const Eigen::Vector3d lam = albert_eigenvalues(a);
      return lam;
    }
    case Family::DirectSum: {
      std::vector<double> all;
      for (int i = 0; i < a.algebra->num_factors(); ++i) {
        const Eigen::VectorXd v = eigenvalues_of(factor_part(a, i));
        all.insert(all.end(), v.data(), v.data() + v.size());
      }
      std::sort(all.begin(), all.end(), std::greater<double>());
      return Eigen::Map<Eigen::VectorXd>(all.data(),
                                         static_cast<int>(all.size()));
    }
  }
  throw SpectralFailure("unknown family");
}

double norm_inf(const Element& a) {
  return eigenvalues_of(a).cwiseAbs().maxCoeff();
}

bool is_positive(const Element& a, double tol) {
  const Eigen::VectorXd v = eigenvalues_of(a);
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  return v.minCoeff() >= -tol * scale;
}

bool cone_leq(const Element& a, const Element& b, double tol) {
  return is_positive(sub(b, a), tol);
}

}  // namespace conelab
