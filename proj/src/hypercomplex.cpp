#include "conelab/hypercomplex.hpp"

#include <cmath>

namespace conelab {

namespace {

// Basis products at dimension `dim` by recursive Cayley-Dickson doubling.
// A basis unit of the doubled algebra is (e_i, 0) or (0, e_i); the product
// rule (a,b)(c,d) = (ac - conj(d)b, da + b conj(c)) reduces basis-by-basis.
void basis_product(int dim, int i, int j, int* index, double* sign) {
  if (dim == 1) {
    *index = 0;
    *sign = 1.0;
    return;
  }
  const int half = dim / 2;
  const bool ihi = i >= half, jhi = j >= half;
  const int il = ihi ? i - half : i;
  const int jl = jhi ? j - half : j;
  int k = 0;
  double s = 1.0;
  auto conj_sign = [half](int b) { return b == 0 ? 1.0 : -1.0; };
  if (!ihi && !jhi) {  // (a,0)(c,0) = (ac, 0)
    basis_product(half, il, jl, &k, &s);
    *index = k;
    *sign = s;
  } else if (ihi && jhi) {  // (0,b)(0,d) = (-conj(d)b, 0)
    basis_product(half, jl, il, &k, &s);
    *index = k;
    *sign = -s * conj_sign(jl);
  } else if (!ihi && jhi) {  // (a,0)(0,d) = (0, da)
    basis_product(half, jl, il, &k, &s);
    *index = k + half;
    *sign = s;
  } else {  // (0,b)(c,0) = (0, b conj(c))
    basis_product(half, il, jl, &k, &s);
    *index = k + half;
    *sign = s * conj_sign(jl);
  }
}

HyperTable build_table(int dim) {
  HyperTable t;
  t.dim = dim;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      basis_product(dim, i, j, &t.index[i][j], &t.sign[i][j]);
    }
  }
  return t;
}

}  // namespace

const HyperTable& hyper_table(int dim) {
  static const HyperTable t1 = build_table(1);
  static const HyperTable t2 = build_table(2);
  static const HyperTable t4 = build_table(4);
  static const HyperTable t8 = build_table(8);
  switch (dim) {
    case 1: return t1;
    case 2: return t2;
    case 4: return t4;
    default: return t8;
  }
}

Hyper hadd(const Hyper& a, const Hyper& b) {
  Hyper r = a;
  for (int i = 0; i < a.dim; ++i) r.c[i] += b.c[i];
  return r;
}

Hyper hsub(const Hyper& a, const Hyper& b) {
  Hyper r = a;
  for (int i = 0; i < a.dim; ++i) r.c[i] -= b.c[i];
  return r;
}

Hyper hscale(const Hyper& a, double s) {
  Hyper r = a;
  for (int i = 0; i < a.dim; ++i) r.c[i] *= s;
  return r;
}

Hyper hmul(const Hyper& a, const Hyper& b) {
  const HyperTable& t = hyper_table(a.dim);
  Hyper r = Hyper::zero(a.dim);
  for (int i = 0; i < a.dim; ++i) {
    if (a.c[i] == 0.0) continue;
    for (int j = 0; j < a.dim; ++j) {
      if (b.c[j] == 0.0) continue;
      r.c[t.index[i][j]] += t.sign[i][j] * a.c[i] * b.c[j];
    }
  }
  return r;
}

Hyper hconj(const Hyper& a) {
  Hyper r = a;
  for (int i = 1; i < a.dim; ++i) r.c[i] = -r.c[i];
  return r;
}

double hnorm2(const Hyper& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a.c[i] * a.c[i];
  return s;
}

HMatrix hm_mul(const HMatrix& a, const HMatrix& b) {
  HMatrix r(a.n, a.hdim);
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      Hyper s = Hyper::zero(a.hdim);
      for (int k = 0; k < a.n; ++k) {
        s = hadd(s, hmul(a.at(i, k), b.at(k, j)));
      }
      r.at(i, j) = s;
    }
  }
  return r;
}

HMatrix hm_add(const HMatrix& a, const HMatrix& b) {
  HMatrix r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = hadd(r.e[i], b.e[i]);
  return r;
}

HMatrix hm_scale(const HMatrix& a, double s) {
  HMatrix r = a;
  for (auto& x : r.e) x = hscale(x, s);
  return r;
}

HMatrix hm_sym(const HMatrix& a, const HMatrix& b) {
  return hm_scale(hm_add(hm_mul(a, b), hm_mul(b, a)), 0.5);
}

HMatrix hm_conj_transpose(const HMatrix& a) {
  HMatrix r(a.n, a.hdim);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.at(i, j) = hconj(a.at(j, i));
  return r;
}

HMatrix hm_identity(int n, int hdim) {
  HMatrix r(n, hdim);
  for (int i = 0; i < n; ++i) r.at(i, i) = Hyper::one(hdim);
  return r;
}

}  // namespace conelab
