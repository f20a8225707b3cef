#include "conelab/symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "conelab/errors.hpp"
#include "conelab/jacobi.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

namespace {

bool is_matrix_family(Family f) {
  return f == Family::RealSymmetric || f == Family::ComplexHermitian ||
         f == Family::QuaternionHermitian;
}

// Unit column of a rank-one Hermitian projector.
std::vector<Hyper> atom_vector(const HMatrix& p) {
  int jbest = 0;
  double dbest = -1.0;
  for (int j = 0; j < p.n; ++j) {
    const double d = p.at(j, j).re();
    if (d > dbest) {
      dbest = d;
      jbest = j;
    }
  }
  std::vector<Hyper> v(p.n);
  double norm2 = 0.0;
  for (int i = 0; i < p.n; ++i) {
    v[i] = p.at(i, jbest);
    norm2 += hnorm2(v[i]);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x = hscale(x, inv);
  return v;
}

Hyper vector_inner(const std::vector<Hyper>& a, const std::vector<Hyper>& b) {
  Hyper c = Hyper::zero(a[0].dim);
  for (std::size_t k = 0; k < a.size(); ++k)
    c = hadd(c, hmul(hconj(a[k]), b[k]));
  return c;
}

HMatrix haar_unitary(int n, int hdim, Rng& rng) {
  HMatrix g(n, hdim);
  for (auto& e : g.e) {
    e.dim = hdim;
    for (int c = 0; c < hdim; ++c) e.c[c] = rng.gaussian();
  }
  // Modified Gram-Schmidt with real positive normalization; applied to a
  // Gaussian matrix this samples the Haar measure of O(n), U(n) or Sp(n).
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      Hyper c = Hyper::zero(hdim);
      for (int k = 0; k < n; ++k) c = hadd(c, hmul(hconj(g.at(k, i)), g.at(k, j)));
      for (int k = 0; k < n; ++k)
        g.at(k, j) = hsub(g.at(k, j), hmul(g.at(k, i), c));
    }
    double norm2 = 0.0;
    for (int k = 0; k < n; ++k) norm2 += hnorm2(g.at(k, j));
    const double inv = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < n; ++k) g.at(k, j) = hscale(g.at(k, j), inv);
  }
  return g;
}

int factor_of_atom(const Element& e) {
  const AlgebraPtr& alg = e.algebra;
  for (int i = 0; i < alg->num_factors(); ++i) {
    if (std::abs(trace_of(factor_part(e, i)) - 1.0) < 0.5) return i;
  }
  throw NotAnAtom("atom has no supporting factor");
}

int basis_index_of_atom(const Element& e) {
  int best = 0;
  e.coords.maxCoeff(&best);
  return best;
}

double idem_residual(const Element& p) {
  return tnorm(sub(jordan_mul(p, p), p));
}

Element quad_rep(const Element& p, const Element& z) {
  const Element pz = jordan_mul(p, z);
  return sub(scale(jordan_mul(p, pz), 2.0), jordan_mul(jordan_mul(p, p), z));
}

// Midpoint atom w of two atoms: P_w(p) = P_w(q), so the Peirce reflection at
// w swaps p and q. Works in every family; used for the exceptional algebra.
Element midpoint_atom(const Atom& p, const Atom& q) {
  const AlgebraPtr& alg = p.element.algebra;
  const double t = trace_form(p.element, q.element);
  if (t > 1e-12) {
    const SpectralDecomposition d =
        spectral_decompose(add(p.element, q.element));
    return d.atoms[0];
  }
  // Orthogonal pair: bridge through the rank-two subalgebra pinned by p+q.
  const Element pq = add(p.element, q.element);
  const Element xp = sub(p.element, q.element);
  Rng rng(0xa1be27u);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Element r = quad_rep(pq, random_element(alg, rng));
    const SpectralDecomposition d = spectral_decompose(r);
    int top = 0;
    d.eigenvalues.cwiseAbs().maxCoeff(&top);
    const Element x1 = sub(scale(d.atoms[top], 2.0), pq);
    const double c = trace_form(x1, xp) / trace_form(xp, xp);
    const Element xw = sub(x1, scale(xp, c));
    const double n2 = trace_form(xw, xw) / 2.0;
    if (n2 < 1e-8) continue;
    const Element w = scale(add(pq, scale(xw, 1.0 / std::sqrt(n2))), 0.5);
    if (idem_residual(w) < 1e-8) return w;
  }
  throw SpectralFailure("could not build a midpoint atom for an orthogonal pair");
}

Automorphism transposition_permutation(const AlgebraPtr& alg, int i, int j) {
  std::vector<int> sigma(alg->dim());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::swap(sigma[i], sigma[j]);
  Automorphism u;
  u.algebra = alg;
  u.op = Automorphism::Permutation{std::move(sigma)};
  return u;
}

Automorphism matrix_atom_reflection(const AlgebraPtr& alg, const Atom& p,
                                    const Atom& q) {
  std::vector<Hyper> vp = atom_vector(to_hmatrix(p.element));
  std::vector<Hyper> vq = atom_vector(to_hmatrix(q.element));
  const int n = static_cast<int>(vp.size());
  const int hdim = vp[0].dim;
  // Rephase vq so the overlap with vp is real nonnegative.
  const Hyper c = vector_inner(vp, vq);
  const double cn = std::sqrt(hnorm2(c));
  if (cn > 1e-14) {
    const Hyper lambda = hscale(hconj(c), 1.0 / cn);
    for (auto& x : vq) x = hmul(x, lambda);
  }
  double dn2 = 0.0;
  std::vector<Hyper> d(n);
  for (int k = 0; k < n; ++k) {
    d[k] = hsub(vp[k], vq[k]);
    dn2 += hnorm2(d[k]);
  }
  if (dn2 < 1e-24) return identity_automorphism(alg);
  HMatrix u = hm_identity(n, hdim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      u.at(i, j) = hsub(u.at(i, j), hscale(hmul(d[i], hconj(d[j])), 2.0 / dn2));
  Automorphism a;
  a.algebra = alg;
  a.op = Automorphism::UnitaryConjugation{std::move(u), false};
  return a;
}

Automorphism spin_atom_reflection(const AlgebraPtr& alg, const Atom& p,
                                  const Atom& q) {
  const int k = alg->kind().n;
  const Eigen::VectorXd u1 = 2.0 * p.element.coords.tail(k);
  const Eigen::VectorXd u2 = 2.0 * q.element.coords.tail(k);
  const Eigen::VectorXd w = u1 - u2;
  const double wn2 = w.squaredNorm();
  Automorphism a;
  a.algebra = alg;
  if (wn2 < 1e-24) {
    a.op = Automorphism::SpinRotation{Eigen::MatrixXd::Identity(k, k)};
  } else {
    a.op = Automorphism::SpinRotation{Eigen::MatrixXd::Identity(k, k) -
                                      (2.0 / wn2) * w * w.transpose()};
  }
  return a;
}

struct Classification {
  bool weak = false, exchange = false, bit = false, strong = false;
  std::string case_name;
};

Classification classify(const AlgebraPtr& alg) {
  Classification c;
  const AlgebraKind& k = alg->kind();
  if (alg->is_abelian()) {
    c = {true, true, true, true, "abelian"};
    return c;
  }
  if (k.family != Family::DirectSum) {
    c = {true, true, true, true, "simple"};
    return c;
  }
  if (k.factors.size() == 1) {
    return classify(alg->factor(0));
  }
  bool all_same = true;
  for (const auto& f : k.factors)
    if (!(f == k.factors[0])) all_same = false;
  if (all_same) {
    c = {true, true, false, false, "isomorphic_factors"};
  } else {
    c = {false, false, false, false, "non_isomorphic_factors"};
  }
  return c;
}

}  // namespace

const char* to_string(SymmetryLevel level) {
  switch (level) {
    case SymmetryLevel::Weak: return "weak";
    case SymmetryLevel::Exchange: return "exchange";
    case SymmetryLevel::Bit: return "bit";
    case SymmetryLevel::Strong: return "strong";
  }
  return "?";
}

Automorphism peirce_reflection(const Idempotent& w) {
  const AlgebraPtr& alg = w.element.algebra;
  const Element s = sub(scale(w.element, 2.0), unit_element(alg));
  const int d = alg->dim();
  Eigen::MatrixXd m(d, d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd ej = Eigen::VectorXd::Zero(d);
    ej[j] = 1.0;
    const Element x{alg, std::move(ej)};
    m.col(j) = sub(scale(jordan_mul(s, jordan_mul(s, x)), 2.0), x).coords;
  }
  Automorphism u;
  u.algebra = alg;
  u.op = Automorphism::ExplicitLinear{m, m};
  return u;
}

Automorphism haar_sample(const AlgebraPtr& alg, Rng& rng) {
  const AlgebraKind& k = alg->kind();
  Automorphism u;
  u.algebra = alg;
  switch (k.family) {
    case Family::Classical: {
      std::vector<int> sigma(k.n);
      std::iota(sigma.begin(), sigma.end(), 0);
      for (int i = k.n - 1; i > 0; --i)
        std::swap(sigma[i], sigma[rng.uniform_int(i + 1)]);
      u.op = Automorphism::Permutation{std::move(sigma)};
      return u;
    }
    case Family::RealSymmetric:
    case Family::ComplexHermitian:
    case Family::QuaternionHermitian: {
      Automorphism::UnitaryConjugation c;
      c.u = haar_unitary(k.n, family_hyper_dim(k.family), rng);
      c.entrywise_conjugate =
          k.family == Family::ComplexHermitian && rng.uniform() < 0.5;
      u.op = std::move(c);
      return u;
    }
    case Family::SpinFactor: {
      const HMatrix q = haar_unitary(k.n, 1, rng);
      Eigen::MatrixXd rot(k.n, k.n);
      for (int i = 0; i < k.n; ++i)
        for (int j = 0; j < k.n; ++j) rot(i, j) = q.at(i, j).re();
      u.op = Automorphism::SpinRotation{std::move(rot)};
      return u;
    }
    case Family::Albert: {
      Automorphism prod = peirce_reflection(Idempotent{
          random_atom(alg, rng).element});
      for (int i = 0; i < 3; ++i) {
        prod = compose(
            peirce_reflection(Idempotent{random_atom(alg, rng).element}),
            prod);
      }
      return prod;
    }
    case Family::DirectSum: {
      Automorphism::FactorWise fw;
      for (int i = 0; i < alg->num_factors(); ++i)
        fw.parts.push_back(haar_sample(alg->factor(i), rng));
      // Uniform permutation within each group of identical factor kinds.
      fw.slot_of.resize(alg->num_factors());
      std::map<std::string, std::vector<int>> groups;
      for (int i = 0; i < alg->num_factors(); ++i)
        groups[alg->factor(i)->kind().to_string()].push_back(i);
      for (auto& [name, slots] : groups) {
        std::vector<int> target = slots;
        for (int i = static_cast<int>(target.size()) - 1; i > 0; --i)
          std::swap(target[i], target[rng.uniform_int(i + 1)]);
        for (std::size_t i = 0; i < slots.size(); ++i)
          fw.slot_of[slots[i]] = target[i];
      }
      u.op = std::move(fw);
      return u;
    }
  }
  throw InvalidAutomorphism("unknown family");
}

BilinearForm make_bilinear_form(const AlgebraPtr& alg, Eigen::MatrixXd gram) {
  if (gram.rows() != alg->dim() || gram.cols() != alg->dim())
    throw DimensionMismatch("Gram matrix size does not match algebra");
  const double asym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, gram.cwiseAbs().maxCoeff()))
    throw NotPositiveDefinite("Gram matrix is not symmetric");
  gram = 0.5 * (gram + gram.transpose());
  if (min_eigenvalue_sym(gram) <= 0.0)
    throw NotPositiveDefinite("Gram matrix is not positive definite");
  return BilinearForm{alg, std::move(gram)};
}

BilinearForm trace_bilinear_form(const AlgebraPtr& alg) {
  return BilinearForm{alg,
                      Eigen::MatrixXd(alg->gram_diag().asDiagonal())};
}

State invariant_state(const AlgebraPtr& alg) {
  return State{scale(unit_element(alg), 1.0 / alg->rank())};
}

State average_state(const State& mu0, int n, Rng& rng) {
  if (n < 1) throw SizeMismatch("average_state needs at least one sample");
  const AlgebraPtr& alg = mu0.riesz.algebra;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(alg->dim());
  for (int i = 0; i < n; ++i) {
    const Automorphism u = haar_sample(alg, rng);
    acc += apply_inverse(u, mu0.riesz).coords;
  }
  return State{Element{alg, acc / n}};
}

BilinearForm make_invariant_form(const AlgebraPtr& alg, double beta) {
  const int m = alg->rank();
  if (beta >= 1.0 || (m > 1 && beta <= -1.0 / (m - 1)))
    throw NotPositiveDefinite(
        "beta outside the positive-definite interval (-1/(m-1), 1)");
  const Eigen::MatrixXd g(alg->gram_diag().asDiagonal());
  const Eigen::VectorXd w = g * alg->unit_coords();
  // (1-beta) <a|b>_tr + beta m^2 mu_inv(a) mu_inv(b)
  Eigen::MatrixXd gram = (1.0 - beta) * g + beta * w * w.transpose();
  return make_bilinear_form(alg, std::move(gram));
}

BilinearForm make_invariant_form_with_cross_term(const AlgebraPtr& alg,
                                                 double beta, double gamma) {
  if (alg->num_factors() < 2)
    throw DimensionMismatch("cross-term form needs a direct sum");
  BilinearForm base = make_invariant_form(alg, beta);
  const Eigen::MatrixXd g(alg->gram_diag().asDiagonal());
  for (int i = 0; i < alg->num_factors(); ++i) {
    const Eigen::VectorXd ti =
        g * embed_factor(alg, i, unit_element(alg->factor(i))).coords;
    for (int j = i + 1; j < alg->num_factors(); ++j) {
      const Eigen::VectorXd tj =
          g * embed_factor(alg, j, unit_element(alg->factor(j))).coords;
      base.gram += gamma * (ti * tj.transpose() + tj * ti.transpose());
    }
  }
  if (min_eigenvalue_sym(base.gram) <= 0.0)
    throw NotPositiveDefinite("cross term destroyed positive definiteness");
  return base;
}

double measure_epsilon(const BilinearForm& form, int samples, Rng& rng,
                       double spread_tol) {
  const AlgebraPtr& alg = form.algebra;
  if (alg->rank() < 2) return 0.0;
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int s = 0; s < samples; ++s) {
    const Frame f = random_frame(alg, 2, rng);
    const double v = form(f.atoms[0].element, f.atoms[1].element);
    if (first) {
      lo = hi = v;
      first = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo > spread_tol)
    throw EpsilonNotConstant(
        lo, hi,
        "orthogonal-pair value is not constant: min " + std::to_string(lo) +
            ", max " + std::to_string(hi) +
            "; the configuration is not bit-symmetric");
  return 0.5 * (lo + hi);
}

SelfDualFormResult build_self_dual_form(const BilinearForm& base, int samples,
                                        Rng& rng) {
  const AlgebraPtr& alg = base.algebra;
  const int m = alg->rank();
  SelfDualFormResult out;
  out.base = base;
  out.epsilon = measure_epsilon(base, samples, rng);
  if (std::abs(out.epsilon) >= 1.0 - 1e-9)
    throw EpsilonOutOfRange("orthogonal-pair value has modulus >= 1");

  const Eigen::MatrixXd g(alg->gram_diag().asDiagonal());
  const Eigen::VectorXd w = g * alg->unit_coords();
  Eigen::MatrixXd gram =
      (base.gram - out.epsilon * w * w.transpose()) / (1.0 - out.epsilon);
  out.result = make_bilinear_form(alg, std::move(gram));

  out.atom_samples = samples;
  const Element unit = unit_element(alg);
  for (int s = 0; s < samples; ++s) {
    const int size = std::min(2, m);
    const Frame f = random_frame(alg, size, rng);
    const Element& p = f.atoms[0].element;
    out.max_atom_norm_residual = std::max(
        out.max_atom_norm_residual, std::abs(out.result(p, p) - 1.0));
    if (size == 2) {
      const Element& q = f.atoms[1].element;
      out.max_orthogonal_residual =
          std::max(out.max_orthogonal_residual, std::abs(out.result(p, q)));
    }
    // Generic (non-orthogonal) atom pair against the transition probability.
    const Atom a = random_atom(alg, rng);
    const Atom b = random_atom(alg, rng);
    out.max_transition_residual = std::max(
        out.max_transition_residual,
        std::abs(out.result(a.element, b.element) -
                 trace_form(a.element, b.element)));
    const Element x = random_element(alg, rng);
    out.max_unit_pairing_residual =
        std::max(out.max_unit_pairing_residual,
                 std::abs(out.result(x, unit) - trace_of(x)));
  }
  return out;
}

SelfDualityReport self_duality_check(const BilinearForm& form, int samples,
                                     Rng& rng) {
  const AlgebraPtr& alg = form.algebra;
  SelfDualityReport rep;
  rep.worst_positive_value = std::numeric_limits<double>::infinity();
  rep.worst_witness_value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Element a = random_positive(alg, rng);
    const Element b = random_positive(alg, rng);
    const double v = form(a, b);
    const double scale_ = std::max(1.0, tnorm(a) * tnorm(b));
    rep.worst_positive_value = std::min(rep.worst_positive_value, v / scale_);
    ++rep.positive_pairs;
    if (v < -1e-8 * scale_)
      throw SelfDualityViolated(
          "positive elements paired negatively (value " + std::to_string(v) +
          ")");
  }
  const int negatives = std::max(1, samples / 10);
  for (int s = 0; s < negatives; ++s) {
    Element a = random_element(alg, rng);
    SpectralDecomposition d = spectral_decompose(a, rng.next_u64());
    if (d.eigenvalues.minCoeff() > -0.1) {
      // Shift so the bottom eigenvalue is clearly negative.
      a = sub(a, scale(unit_element(alg), d.eigenvalues.minCoeff() + 1.0));
      d = spectral_decompose(a, rng.next_u64());
    }
    const Element& witness = d.atoms[d.atoms.size() - 1];
    const double v = form(a, witness);
    rep.worst_witness_value = std::max(rep.worst_witness_value, v);
    ++rep.negative_witnesses;
    if (v >= -1e-10)
      throw SelfDualityViolated(
          "no separating witness for a non-positive element (pairing " +
          std::to_string(v) + ")");
  }
  rep.pass = true;
  return rep;
}

Automorphism transport_atom(const Atom& p, const Atom& q) {
  return exchange_automorphism(p, q);
}

Automorphism exchange_automorphism(const Atom& p, const Atom& q) {
  require_same_algebra(p.element, q.element, "exchange_automorphism");
  const AlgebraPtr& alg = p.element.algebra;
  const AlgebraKind& k = alg->kind();

  if (alg->is_abelian()) {
    return transposition_permutation(alg, basis_index_of_atom(p.element),
                                     basis_index_of_atom(q.element));
  }
  if (is_matrix_family(k.family)) return matrix_atom_reflection(alg, p, q);
  if (k.family == Family::SpinFactor) return spin_atom_reflection(alg, p, q);
  if (k.family == Family::Albert) {
    if (tnorm(sub(p.element, q.element)) < 1e-12)
      return identity_automorphism(alg);
    return peirce_reflection(Idempotent{midpoint_atom(p, q)});
  }

  // Direct sum: inner transport, or a factor swap between same-kind factors.
  const int ip = factor_of_atom(p.element);
  const int iq = factor_of_atom(q.element);
  Automorphism::FactorWise fw;
  fw.slot_of.resize(alg->num_factors());
  std::iota(fw.slot_of.begin(), fw.slot_of.end(), 0);
  for (int i = 0; i < alg->num_factors(); ++i)
    fw.parts.push_back(identity_automorphism(alg->factor(i)));
  if (ip == iq) {
    fw.parts[ip] = exchange_automorphism(Atom{factor_part(p.element, ip)},
                                         Atom{factor_part(q.element, iq)});
  } else if (alg->factor(ip)->kind() == alg->factor(iq)->kind()) {
    const Automorphism v = exchange_automorphism(
        Atom{factor_part(p.element, ip)}, Atom{factor_part(q.element, iq)});
    fw.parts[ip] = v;
    fw.parts[iq] = v;
    std::swap(fw.slot_of[ip], fw.slot_of[iq]);
  } else {
    throw NoTransporter(
        "NonIsomorphicFactors",
        "atoms live in non-isomorphic factors " +
            alg->factor(ip)->kind().to_string() + " and " +
            alg->factor(iq)->kind().to_string());
  }
  Automorphism u;
  u.algebra = alg;
  u.op = std::move(fw);
  return u;
}

namespace {

Automorphism matrix_frame_transport(const AlgebraPtr& alg, const Frame& f1,
                                    const Frame& f2) {
  const int n = alg->kind().n;
  const int hdim = family_hyper_dim(alg->kind().family);
  auto complete_basis = [&](std::vector<std::vector<Hyper>> vs) {
    for (int cand = 0; cand < n && static_cast<int>(vs.size()) < n; ++cand) {
      std::vector<Hyper> v(n, Hyper::zero(hdim));
      v[cand] = Hyper::one(hdim);
      for (const auto& u : vs) {
        const Hyper c = vector_inner(u, v);
        for (int k = 0; k < n; ++k) v[k] = hsub(v[k], hmul(u[k], c));
      }
      double n2 = 0.0;
      for (int k = 0; k < n; ++k) n2 += hnorm2(v[k]);
      if (n2 < 1e-8) continue;
      const double inv = 1.0 / std::sqrt(n2);
      for (auto& x : v) x = hscale(x, inv);
      vs.push_back(std::move(v));
    }
    if (static_cast<int>(vs.size()) != n)
      throw NumericalFailure("basis completion failed");
    return vs;
  };

  std::vector<std::vector<Hyper>> vs, ws;
  for (const Atom& a : f1.atoms) vs.push_back(atom_vector(to_hmatrix(a.element)));
  for (const Atom& a : f2.atoms) ws.push_back(atom_vector(to_hmatrix(a.element)));
  vs = complete_basis(std::move(vs));
  ws = complete_basis(std::move(ws));

  // u = W V^*, so u v_t = w_t.
  HMatrix u(n, hdim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Hyper s = Hyper::zero(hdim);
      for (int t = 0; t < n; ++t)
        s = hadd(s, hmul(ws[t][i], hconj(vs[t][j])));
      u.at(i, j) = s;
    }
  }
  Automorphism a;
  a.algebra = alg;
  a.op = Automorphism::UnitaryConjugation{std::move(u), false};
  return a;
}

Automorphism abelian_frame_transport(const AlgebraPtr& alg, const Frame& f1,
                                     const Frame& f2) {
  const int d = alg->dim();
  std::vector<int> sigma(d, -1);
  std::vector<bool> used(d, false);
  for (int t = 0; t < f1.size(); ++t) {
    const int i = basis_index_of_atom(f1.atoms[t].element);
    const int j = basis_index_of_atom(f2.atoms[t].element);
    sigma[i] = j;
    used[j] = true;
  }
  int next = 0;
  for (int i = 0; i < d; ++i) {
    if (sigma[i] >= 0) continue;
    while (used[next]) ++next;
    sigma[i] = next;
    used[next] = true;
  }
  Automorphism u;
  u.algebra = alg;
  u.op = Automorphism::Permutation{std::move(sigma)};
  return u;
}

Automorphism albert_frame_transport(const AlgebraPtr& alg, const Frame& f1,
                                    const Frame& f2) {
  // Chain of midpoint reflections; each step fixes the atoms already placed
  // because they are orthogonal to the step's Peirce-zero subalgebra.
  Automorphism u = identity_automorphism(alg);
  for (int t = 0; t < f1.size(); ++t) {
    const Element cur = apply(u, f1.atoms[t].element);
    const Element& target = f2.atoms[t].element;
    if (tnorm(sub(cur, target)) < 1e-10) continue;
    const Automorphism r =
        peirce_reflection(Idempotent{midpoint_atom(Atom{cur}, Atom{target})});
    u = compose(r, u);
  }
  return u;
}

Automorphism direct_sum_frame_transport(const AlgebraPtr& alg, const Frame& f1,
                                        const Frame& f2) {
  const int nf = alg->num_factors();
  // Slot assignment pi forced by the ordered correspondence f1[t] -> f2[t].
  std::vector<int> pi(nf, -1);
  std::vector<bool> taken(nf, false);
  std::vector<std::vector<int>> per_slot(nf);  // positions t by source slot
  for (int t = 0; t < f1.size(); ++t) {
    const int i = factor_of_atom(f1.atoms[t].element);
    const int j = factor_of_atom(f2.atoms[t].element);
    per_slot[i].push_back(t);
    if (pi[i] == -1) {
      if (taken[j] || !(alg->factor(i)->kind() == alg->factor(j)->kind()))
        throw NoTransporter(
            "FactorSignatureMismatch",
            "frames distribute over factors incompatibly (factor " +
                std::to_string(i) + " vs " + std::to_string(j) + ")");
      pi[i] = j;
      taken[j] = true;
    } else if (pi[i] != j) {
      throw NoTransporter(
          "FactorSignatureMismatch",
          "frames distribute over factors incompatibly: source factor " +
              std::to_string(i) + " must map to both factor " +
              std::to_string(pi[i]) + " and factor " + std::to_string(j));
    }
  }
  // Fill the unassigned slots kind-preservingly.
  for (int i = 0; i < nf; ++i) {
    if (pi[i] >= 0) continue;
    for (int j = 0; j < nf; ++j) {
      if (!taken[j] && alg->factor(i)->kind() == alg->factor(j)->kind()) {
        pi[i] = j;
        taken[j] = true;
        break;
      }
    }
    if (pi[i] < 0)
      throw NoTransporter("FactorSignatureMismatch",
                          "leftover factors cannot be matched by kind");
  }

  Automorphism::FactorWise fw;
  fw.slot_of = pi;
  for (int i = 0; i < nf; ++i) {
    if (per_slot[i].empty()) {
      fw.parts.push_back(identity_automorphism(alg->factor(i)));
      continue;
    }
    Frame sub1, sub2;
    for (int t : per_slot[i]) {
      sub1.atoms.push_back(Atom{factor_part(f1.atoms[t].element, i)});
      sub2.atoms.push_back(Atom{factor_part(f2.atoms[t].element, pi[i])});
    }
    TransporterResult r = transport_frame(sub1, sub2);
    if (!r.transporter)
      throw NoTransporter("FactorSignatureMismatch", r.obstruction);
    fw.parts.push_back(std::move(*r.transporter));
  }
  Automorphism u;
  u.algebra = alg;
  u.op = std::move(fw);
  return u;
}

}  // namespace

TransporterResult transport_frame(const Frame& f1, const Frame& f2) {
  if (f1.size() != f2.size())
    throw SizeMismatch("frames have different sizes");
  TransporterResult out;
  if (f1.size() == 0) {
    out.transporter = std::nullopt;
    out.obstruction = "empty frames";
    return out;
  }
  const AlgebraPtr& alg = f1.atoms[0].element.algebra;
  require_same_algebra(f1.atoms[0].element, f2.atoms[0].element,
                       "transport_frame");
  try {
    Automorphism u = identity_automorphism(alg);
    if (alg->is_abelian()) {
      u = abelian_frame_transport(alg, f1, f2);
    } else if (is_matrix_family(alg->kind().family)) {
      u = matrix_frame_transport(alg, f1, f2);
    } else if (alg->kind().family == Family::SpinFactor) {
      u = spin_atom_reflection(alg, f1.atoms[0], f2.atoms[0]);
    } else if (alg->kind().family == Family::Albert) {
      u = albert_frame_transport(alg, f1, f2);
    } else {
      u = direct_sum_frame_transport(alg, f1, f2);
    }
    double res = 0.0;
    for (int t = 0; t < f1.size(); ++t)
      res = std::max(
          res, tnorm(sub(apply(u, f1.atoms[t].element), f2.atoms[t].element)));
    if (res > 1e-8)
      throw NumericalFailure("frame transporter residual " +
                             std::to_string(res));
    out.transporter = std::move(u);
    out.residual = res;
  } catch (const NoTransporter& e) {
    out.obstruction = e.obstruction + ": " + e.what();
  }
  return out;
}

namespace {

SymmetryVerdict make_verdict(SymmetryLevel level, bool classification) {
  SymmetryVerdict v;
  v.level = level;
  v.classification_holds = classification;
  v.holds = true;
  return v;
}

void record_atom_attempt(SymmetryVerdict& v, const Atom& p, const Atom& q,
                         bool exchange) {
  ++v.samples_attempted;
  try {
    const Automorphism u = exchange_automorphism(p, q);
    double res = tnorm(sub(apply(u, p.element), q.element));
    if (exchange)
      res = std::max(res, tnorm(sub(apply(u, q.element), p.element)));
    v.max_residual = std::max(v.max_residual, res);
    if (res <= 1e-8) {
      ++v.samples_ok;
    } else {
      v.holds = false;
      v.obstruction = "transporter residual " + std::to_string(res);
    }
  } catch (const NoTransporter& e) {
    v.holds = false;
    if (v.obstruction.empty())
      v.obstruction = e.obstruction + ": " + e.what();
  }
}

void record_frame_attempt(SymmetryVerdict& v, const Frame& f1,
                          const Frame& f2) {
  ++v.samples_attempted;
  const TransporterResult r = transport_frame(f1, f2);
  if (r.transporter) {
    ++v.samples_ok;
    v.max_residual = std::max(v.max_residual, r.residual);
  } else {
    v.holds = false;
    if (v.obstruction.empty()) v.obstruction = r.obstruction;
  }
}

}  // namespace

std::vector<SymmetryVerdict> symmetry_report(const AlgebraPtr& alg,
                                             int samples, Rng& rng) {
  const Classification cls = classify(alg);
  SymmetryVerdict weak = make_verdict(SymmetryLevel::Weak, cls.weak);
  SymmetryVerdict exch = make_verdict(SymmetryLevel::Exchange, cls.exchange);
  SymmetryVerdict bit = make_verdict(SymmetryLevel::Bit, cls.bit);
  SymmetryVerdict strong = make_verdict(SymmetryLevel::Strong, cls.strong);
  const int m = alg->rank();

  // Deterministic witnesses for direct sums before random sampling.
  if (alg->num_factors() >= 2 && !alg->is_abelian()) {
    Rng det = rng.split();
    // A cross-kind atom pair, when one exists.
    for (int i = 1; i < alg->num_factors(); ++i) {
      if (!(alg->factor(i)->kind() == alg->factor(0)->kind())) {
        const Atom p{embed_factor(alg, 0,
                                  random_atom(alg->factor(0), det).element)};
        const Atom q{embed_factor(alg, i,
                                  random_atom(alg->factor(i), det).element)};
        record_atom_attempt(weak, p, q, false);
        record_atom_attempt(exch, p, q, true);
        break;
      }
    }
    // In-factor 2-frame against a cross-factor 2-frame.
    if (alg->factor(0)->rank() >= 2) {
      const Frame inner = random_frame(alg->factor(0), 2, det);
      Frame in_frame;
      in_frame.atoms.push_back(Atom{embed_factor(alg, 0, inner.atoms[0].element)});
      in_frame.atoms.push_back(Atom{embed_factor(alg, 0, inner.atoms[1].element)});
      Frame cross;
      cross.atoms.push_back(Atom{embed_factor(alg, 0, inner.atoms[0].element)});
      cross.atoms.push_back(Atom{
          embed_factor(alg, 1, random_atom(alg->factor(1), det).element)});
      record_frame_attempt(bit, in_frame, cross);
      record_frame_attempt(strong, in_frame, cross);
    }
  }

  for (int s = 0; s < samples; ++s) {
    const Atom p = random_atom(alg, rng);
    const Atom q = random_atom(alg, rng);
    record_atom_attempt(weak, p, q, false);
    record_atom_attempt(exch, p, q, true);
    if (m >= 2) {
      record_frame_attempt(bit, random_frame(alg, 2, rng),
                           random_frame(alg, 2, rng));
      const int size = 1 + rng.uniform_int(m);
      record_frame_attempt(strong, random_frame(alg, size, rng),
                           random_frame(alg, size, rng));
    }
  }

  for (SymmetryVerdict* v : {&weak, &exch, &bit, &strong}) {
    if (v->holds != v->classification_holds)
      v->note = "constructive and structural verdicts disagree";
  }
  return {weak, exch, bit, strong};
}

std::vector<std::pair<double, State>> state_decomposition(const State& mu) {
  const SpectralDecomposition d = spectral_decompose(mu.riesz);
  std::vector<std::pair<double, State>> out;
  for (int k = 0; k < d.eigenvalues.size(); ++k)
    out.emplace_back(d.eigenvalues[k], State{d.atoms[k]});
  return out;
}

}  // namespace conelab
