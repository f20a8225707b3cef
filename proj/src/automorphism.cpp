#include "conelab/automorphism.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/errors.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

namespace {

HMatrix entrywise_conj(const HMatrix& x) {
  HMatrix r = x;
  for (auto& e : r.e) e = hconj(e);
  return r;
}

Element apply_unitary(const Automorphism::UnitaryConjugation& c,
                      const AlgebraPtr& alg, const Element& x, bool forward) {
  HMatrix m = to_hmatrix(x);
  if (forward) {
    if (c.entrywise_conjugate) m = entrywise_conj(m);
    m = hm_mul(hm_mul(c.u, m), hm_conj_transpose(c.u));
  } else {
    m = hm_mul(hm_mul(hm_conj_transpose(c.u), m), c.u);
    if (c.entrywise_conjugate) m = entrywise_conj(m);
  }
  return from_hmatrix(alg, m);
}

}  // namespace

Element apply(const Automorphism& u, const Element& x) {
  if (!(x.algebra == u.algebra || x.algebra->kind() == u.algebra->kind()))
    throw AlgebraMismatch("automorphism applied to foreign element");
  const AlgebraPtr& alg = u.algebra;
  return std::visit(
      [&](const auto& op) -> Element {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Automorphism::Permutation>) {
          Eigen::VectorXd r(x.coords.size());
          for (int i = 0; i < x.coords.size(); ++i)
            r[op.sigma[i]] = x.coords[i];
          return Element{alg, std::move(r)};
        } else if constexpr (std::is_same_v<T,
                                            Automorphism::UnitaryConjugation>) {
          return apply_unitary(op, alg, x, true);
        } else if constexpr (std::is_same_v<T, Automorphism::SpinRotation>) {
          const int k = alg->kind().n;
          Eigen::VectorXd r(k + 1);
          r[0] = x.coords[0];
          r.tail(k) = op.rot * x.coords.tail(k);
          return Element{alg, std::move(r)};
        } else if constexpr (std::is_same_v<T, Automorphism::FactorWise>) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(alg->dim());
          for (std::size_t i = 0; i < op.parts.size(); ++i) {
            const Element part = factor_part(x, static_cast<int>(i));
            const Element image = apply(op.parts[i], part);
            const int slot = op.slot_of[i];
            r.segment(alg->factor_offset(slot), image.coords.size()) =
                image.coords;
          }
          return Element{alg, std::move(r)};
        } else {
          return Element{alg, op.fwd * x.coords};
        }
      },
      u.op);
}

Element apply_inverse(const Automorphism& u, const Element& x) {
  const AlgebraPtr& alg = u.algebra;
  return std::visit(
      [&](const auto& op) -> Element {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Automorphism::Permutation>) {
          Eigen::VectorXd r(x.coords.size());
          for (int i = 0; i < x.coords.size(); ++i)
            r[i] = x.coords[op.sigma[i]];
          return Element{alg, std::move(r)};
        } else if constexpr (std::is_same_v<T,
                                            Automorphism::UnitaryConjugation>) {
          return apply_unitary(op, alg, x, false);
        } else if constexpr (std::is_same_v<T, Automorphism::SpinRotation>) {
          const int k = alg->kind().n;
          Eigen::VectorXd r(k + 1);
          r[0] = x.coords[0];
          r.tail(k) = op.rot.transpose() * x.coords.tail(k);
          return Element{alg, std::move(r)};
        } else if constexpr (std::is_same_v<T, Automorphism::FactorWise>) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(alg->dim());
          for (std::size_t i = 0; i < op.parts.size(); ++i) {
            const int slot = op.slot_of[i];
            const Element part{alg->factor(slot),
                               x.coords.segment(alg->factor_offset(slot),
                                                alg->factor(slot)->dim())};
            const Element pre = apply_inverse(op.parts[i], part);
            r.segment(alg->factor_offset(static_cast<int>(i)),
                      pre.coords.size()) = pre.coords;
          }
          return Element{alg, std::move(r)};
        } else {
          return Element{alg, op.inv * x.coords};
        }
      },
      u.op);
}

Automorphism identity_automorphism(const AlgebraPtr& alg) {
  Automorphism u;
  u.algebra = alg;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(alg->dim(), alg->dim());
  u.op = Automorphism::ExplicitLinear{id, id};
  return u;
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (!(f.algebra->kind() == g.algebra->kind()))
    throw AlgebraMismatch("composing automorphisms of different algebras");
  const Eigen::MatrixXd mf = as_matrix(f);
  const Eigen::MatrixXd mg = as_matrix(g);
  Eigen::MatrixXd mfinv(mf.rows(), mf.cols()), mginv(mg.rows(), mg.cols());
  for (int j = 0; j < f.algebra->dim(); ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(f.algebra->dim());
    e[j] = 1.0;
    mfinv.col(j) = apply_inverse(f, Element{f.algebra, e}).coords;
    mginv.col(j) = apply_inverse(g, Element{g.algebra, e}).coords;
  }
  Automorphism r;
  r.algebra = f.algebra;
  r.op = Automorphism::ExplicitLinear{mf * mg, mginv * mfinv};
  return r;
}

Eigen::MatrixXd as_matrix(const Automorphism& u) {
  const int d = u.algebra->dim();
  Eigen::MatrixXd m(d, d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[j] = 1.0;
    m.col(j) = apply(u, Element{u.algebra, e}).coords;
  }
  return m;
}

std::string kind_name(const Automorphism& u) {
  return std::visit(
      [](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Automorphism::Permutation>)
          return "permutation";
        else if constexpr (std::is_same_v<T, Automorphism::UnitaryConjugation>)
          return op.entrywise_conjugate ? "unitary_conjugation+conj"
                                        : "unitary_conjugation";
        else if constexpr (std::is_same_v<T, Automorphism::SpinRotation>)
          return "spin_rotation";
        else if constexpr (std::is_same_v<T, Automorphism::FactorWise>)
          return "factor_wise";
        else
          return "explicit_linear";
      },
      u.op);
}

AutomorphismValidation validate(const Automorphism& u, int samples, Rng& rng) {
  AutomorphismValidation v;
  const AlgebraPtr& alg = u.algebra;
  const Element unit = unit_element(alg);
  v.unit_residual = tnorm(sub(apply(u, unit), unit));

  for (int s = 0; s < samples; ++s) {
    const Element a = random_element(alg, rng);
    const Element b = random_element(alg, rng);
    const double sc = std::max(1.0, tnorm(a) * tnorm(b));
    const double mul_res =
        tnorm(sub(apply(u, jordan_mul(a, b)),
                  jordan_mul(apply(u, a), apply(u, b)))) /
        sc;
    v.max_product_residual = std::max(v.max_product_residual, mul_res);

    Eigen::VectorXd ev_a = eigenvalues_of(a);
    Eigen::VectorXd ev_ua = eigenvalues_of(apply(u, a));
    const double spec_res = (ev_a - ev_ua).cwiseAbs().maxCoeff() /
                            std::max(1.0, ev_a.cwiseAbs().maxCoeff());
    v.max_spectrum_residual = std::max(v.max_spectrum_residual, spec_res);

    const Element pos = random_positive(alg, rng);
    if (!is_positive(apply(u, pos), 1e-8) ||
        !is_positive(apply_inverse(u, pos), 1e-8))
      v.positivity_ok = false;

    // Round trip.
    const double rt =
        tnorm(sub(apply_inverse(u, apply(u, a)), a)) / std::max(1.0, tnorm(a));
    v.max_product_residual = std::max(v.max_product_residual, rt);
  }
  v.ok = v.unit_residual < 1e-10 && v.max_product_residual < 1e-8 &&
         v.max_spectrum_residual < 1e-8 && v.positivity_ok;
  return v;
}

void require_valid(const Automorphism& u, int samples, Rng& rng) {
  const AutomorphismValidation v = validate(u, samples, rng);
  if (!v.ok)
    throw InvalidAutomorphism(
        "automorphism failed validation (unit " +
        std::to_string(v.unit_residual) + ", product " +
        std::to_string(v.max_product_residual) + ", spectrum " +
        std::to_string(v.max_spectrum_residual) + ")");
}

}  // namespace conelab
