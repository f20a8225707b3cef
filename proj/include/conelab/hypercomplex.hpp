#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace conelab {

// Scalar over R, C, H or O, stored as real coefficients of length 1/2/4/8.
// Multiplication tables come from the Cayley-Dickson doubling
//   (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))
// starting from R, so e1 = i, e2 = j, e3 = k = ij, e4 .. e7 = (0,1), (0,i),
// (0,j), (0,k). Octonion basis products are generated once from this rule.
struct Hyper {
  int dim = 1;  // 1, 2, 4 or 8
  std::array<double, 8> c{};

  static Hyper zero(int dim) {
    Hyper h;
    h.dim = dim;
    return h;
  }
  static Hyper one(int dim) {
    Hyper h = zero(dim);
    h.c[0] = 1.0;
    return h;
  }
  static Hyper unit(int dim, int k) {
    Hyper h = zero(dim);
    h.c[k] = 1.0;
    return h;
  }
  static Hyper real(int dim, double x) {
    Hyper h = zero(dim);
    h.c[0] = x;
    return h;
  }

  double re() const { return c[0]; }
};

Hyper hadd(const Hyper& a, const Hyper& b);
Hyper hsub(const Hyper& a, const Hyper& b);
Hyper hscale(const Hyper& a, double s);
Hyper hmul(const Hyper& a, const Hyper& b);
Hyper hconj(const Hyper& a);
double hnorm2(const Hyper& a);

// Structure constants: e_i * e_j = sign(i,j) * e_index(i,j) at a given dim.
// Exposed for the real-matrix embeddings in the spectral module.
struct HyperTable {
  int dim;
  std::array<std::array<int, 8>, 8> index;
  std::array<std::array<double, 8>, 8> sign;
};
const HyperTable& hyper_table(int dim);

// Dense matrix with Hyper entries, row major. Used for the Hermitian-matrix
// Jordan algebras (including the octonionic 3x3 case).
struct HMatrix {
  int n = 0;
  int hdim = 1;
  std::vector<Hyper> e;

  HMatrix() = default;
  HMatrix(int n, int hdim) : n(n), hdim(hdim), e(n * n, Hyper::zero(hdim)) {}
  Hyper& at(int i, int j) { return e[i * n + j]; }
  const Hyper& at(int i, int j) const { return e[i * n + j]; }
};

HMatrix hm_mul(const HMatrix& a, const HMatrix& b);
HMatrix hm_add(const HMatrix& a, const HMatrix& b);
HMatrix hm_scale(const HMatrix& a, double s);
// (ab + ba)/2; Hermitian inputs give a Hermitian result in all four rings.
HMatrix hm_sym(const HMatrix& a, const HMatrix& b);
HMatrix hm_conj_transpose(const HMatrix& a);
HMatrix hm_identity(int n, int hdim);

}  // namespace conelab
