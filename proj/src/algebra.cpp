#include "conelab/algebra.hpp"

#include <cmath>
#include <sstream>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void validate_kind(const AlgebraKind& k, bool inside_sum) {
  switch (k.family) {
    case Family::Classical:
      if (k.n < 1) throw InvalidKind("classical requires n >= 1");
      break;
    case Family::RealSymmetric:
      if (k.n < 2) throw InvalidKind("herm_r requires n >= 2");
      break;
    case Family::ComplexHermitian:
      if (k.n < 2) throw InvalidKind("herm_c requires n >= 2");
      break;
    case Family::QuaternionHermitian:
      if (k.n < 2) throw InvalidKind("herm_h requires n >= 2");
      break;
    case Family::SpinFactor:
      if (k.n < 2) throw InvalidKind("spin requires k >= 2");
      break;
    case Family::Albert:
      break;
    case Family::DirectSum:
      if (inside_sum) throw InvalidKind("nested direct sums are not allowed");
      if (k.factors.empty()) throw InvalidKind("empty direct sum");
      for (const auto& f : k.factors) validate_kind(f, true);
      break;
  }
}

}  // namespace

int AlgebraKind::dim() const {
  switch (family) {
    case Family::Classical: return n;
    case Family::RealSymmetric: return n * (n + 1) / 2;
    case Family::ComplexHermitian: return n * n;
    case Family::QuaternionHermitian: return n * (2 * n - 1);
    case Family::SpinFactor: return n + 1;
    case Family::Albert: return 27;
    case Family::DirectSum: {
      int d = 0;
      for (const auto& f : factors) d += f.dim();
      return d;
    }
  }
  return 0;
}

int AlgebraKind::rank() const {
  switch (family) {
    case Family::Classical: return n;
    case Family::RealSymmetric:
    case Family::ComplexHermitian:
    case Family::QuaternionHermitian: return n;
    case Family::SpinFactor: return 2;
    case Family::Albert: return 3;
    case Family::DirectSum: {
      int m = 0;
      for (const auto& f : factors) m += f.rank();
      return m;
    }
  }
  return 0;
}

bool AlgebraKind::operator==(const AlgebraKind& other) const {
  if (family != other.family) return false;
  if (family == Family::DirectSum) return factors == other.factors;
  if (family == Family::Albert) return true;
  return n == other.n;
}

std::string AlgebraKind::to_string() const {
  std::ostringstream os;
  switch (family) {
    case Family::Classical: os << "classical:" << n; break;
    case Family::RealSymmetric: os << "herm_r:" << n; break;
    case Family::ComplexHermitian: os << "herm_c:" << n; break;
    case Family::QuaternionHermitian: os << "herm_h:" << n; break;
    case Family::SpinFactor: os << "spin:" << n; break;
    case Family::Albert: os << "albert"; break;
    case Family::DirectSum: {
      os << "sum:";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "+";
        os << factors[i].to_string();
      }
      break;
    }
  }
  return os.str();
}

AlgebraKind AlgebraKind::parse(const std::string& spec) {
  auto parse_int = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos != s.size()) throw ParseError("trailing characters in " + spec);
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError("bad integer in algebra spec '" + spec + "'");
    }
  };

  if (spec == "albert") return albert();
  if (spec.rfind("sum:", 0) == 0) {
    std::vector<AlgebraKind> fs;
    std::string body = spec.substr(4);
    std::size_t start = 0;
    while (start <= body.size()) {
      const std::size_t plus = body.find('+', start);
      const std::string part =
          body.substr(start, plus == std::string::npos ? plus : plus - start);
      if (part.empty()) throw ParseError("empty factor in '" + spec + "'");
      if (part.rfind("sum:", 0) == 0)
        throw InvalidKind("nested direct sums are not allowed");
      fs.push_back(parse(part));
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    return direct_sum(std::move(fs));
  }
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError("unknown algebra spec '" + spec + "'");
  const std::string head = spec.substr(0, colon);
  const int v = parse_int(spec.substr(colon + 1));
  if (head == "classical") return classical(v);
  if (head == "herm_r") return real_symmetric(v);
  if (head == "herm_c") return complex_hermitian(v);
  if (head == "herm_h") return quaternion_hermitian(v);
  if (head == "spin") return spin_factor(v);
  throw ParseError("unknown algebra family '" + head + "'");
}

AlgebraKind AlgebraKind::classical(int n) { return {Family::Classical, n, {}}; }
AlgebraKind AlgebraKind::real_symmetric(int n) {
  return {Family::RealSymmetric, n, {}};
}
AlgebraKind AlgebraKind::complex_hermitian(int n) {
  return {Family::ComplexHermitian, n, {}};
}
AlgebraKind AlgebraKind::quaternion_hermitian(int n) {
  return {Family::QuaternionHermitian, n, {}};
}
AlgebraKind AlgebraKind::spin_factor(int k) {
  return {Family::SpinFactor, k, {}};
}
AlgebraKind AlgebraKind::albert() { return {Family::Albert, 3, {}}; }
AlgebraKind AlgebraKind::direct_sum(std::vector<AlgebraKind> factors) {
  return {Family::DirectSum, 0, std::move(factors)};
}

bool Algebra::is_abelian() const {
  if (kind_.family == Family::Classical) return true;
  if (kind_.family != Family::DirectSum) return false;
  for (const auto& f : kind_.factors)
    if (f.family != Family::Classical) return false;
  return true;
}

AlgebraPtr make_algebra(const AlgebraKind& kind) {
  validate_kind(kind, false);
  auto alg = std::make_shared<Algebra>();
  alg->kind_ = kind;
  alg->dim_ = kind.dim();
  alg->rank_ = kind.rank();
  alg->unit_ = Eigen::VectorXd::Zero(alg->dim_);
  alg->gram_diag_ = Eigen::VectorXd::Ones(alg->dim_);

  switch (kind.family) {
    case Family::Classical:
      alg->unit_.setOnes();
      break;
    case Family::RealSymmetric:
    case Family::ComplexHermitian:
    case Family::QuaternionHermitian:
    case Family::Albert: {
      const int n = kind.family == Family::Albert ? 3 : kind.n;
      for (int i = 0; i < n; ++i) alg->unit_[i] = 1.0;
      break;
    }
    case Family::SpinFactor:
      alg->unit_[0] = 1.0;
      alg->gram_diag_.setConstant(2.0);
      break;
    case Family::DirectSum: {
      int off = 0;
      for (const auto& fk : kind.factors) {
        AlgebraPtr f = make_algebra(fk);
        alg->offsets_.push_back(off);
        alg->unit_.segment(off, f->dim()) = f->unit_coords();
        alg->gram_diag_.segment(off, f->dim()) = f->gram_diag();
        off += f->dim();
        alg->factors_.push_back(std::move(f));
      }
      break;
    }
  }
  return alg;
}

AlgebraPtr make_algebra(const std::string& spec) {
  return make_algebra(AlgebraKind::parse(spec));
}

Element make_element(const AlgebraPtr& alg, Eigen::VectorXd coords) {
  if (coords.size() != alg->dim())
    throw DimensionMismatch("element coordinate length does not match algebra");
  return Element{alg, std::move(coords)};
}

Element unit_element(const AlgebraPtr& alg) {
  return Element{alg, alg->unit_coords()};
}

Element zero_element(const AlgebraPtr& alg) {
  return Element{alg, Eigen::VectorXd::Zero(alg->dim())};
}

bool same_algebra(const Element& a, const Element& b) {
  return a.algebra == b.algebra || a.algebra->kind() == b.algebra->kind();
}

void require_same_algebra(const Element& a, const Element& b, const char* op) {
  if (!same_algebra(a, b))
    throw AlgebraMismatch(std::string(op) + ": operands live in different algebras");
}

int family_hyper_dim(Family f) {
  switch (f) {
    case Family::RealSymmetric: return 1;
    case Family::ComplexHermitian: return 2;
    case Family::QuaternionHermitian: return 4;
    case Family::Albert: return 8;
    default:
      throw DimensionMismatch("not a Hermitian-matrix family");
  }
}

namespace {

int matrix_size(const AlgebraKind& k) {
  return k.family == Family::Albert ? 3 : k.n;
}

bool is_matrix_family(Family f) {
  return f == Family::RealSymmetric || f == Family::ComplexHermitian ||
         f == Family::QuaternionHermitian || f == Family::Albert;
}

}  // namespace

HMatrix to_hmatrix(const Element& a) {
  const AlgebraKind& k = a.algebra->kind();
  if (!is_matrix_family(k.family))
    throw DimensionMismatch("to_hmatrix: not a matrix family");
  const int n = matrix_size(k);
  const int h = family_hyper_dim(k.family);
  HMatrix m(n, h);
  for (int i = 0; i < n; ++i) m.at(i, i) = Hyper::real(h, a.coords[i]);
  int off = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Hyper q = Hyper::zero(h);
      for (int c = 0; c < h; ++c) q.c[c] = a.coords[off + c] / kSqrt2;
      m.at(i, j) = q;
      m.at(j, i) = hconj(q);
      off += h;
    }
  }
  return m;
}

Element from_hmatrix(const AlgebraPtr& alg, const HMatrix& m) {
  const AlgebraKind& k = alg->kind();
  const int n = matrix_size(k);
  const int h = family_hyper_dim(k.family);
  Eigen::VectorXd coords = Eigen::VectorXd::Zero(alg->dim());
  for (int i = 0; i < n; ++i) coords[i] = m.at(i, i).re();
  int off = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Average the (i,j) and conjugated (j,i) entries; for Hermitian input
      // they agree, for nearly-Hermitian numerical results this symmetrizes.
      const Hyper q = hscale(hadd(m.at(i, j), hconj(m.at(j, i))), 0.5);
      for (int c = 0; c < h; ++c) coords[off + c] = q.c[c] * kSqrt2;
      off += h;
    }
  }
  return Element{alg, std::move(coords)};
}

Element jordan_mul(const Element& a, const Element& b) {
  require_same_algebra(a, b, "jordan_mul");
  const AlgebraPtr& alg = a.algebra;
  const AlgebraKind& k = alg->kind();
  switch (k.family) {
    case Family::Classical:
      return Element{alg, a.coords.cwiseProduct(b.coords)};
    case Family::SpinFactor: {
      const int kk = k.n;
      Eigen::VectorXd r(kk + 1);
      const double s = a.coords[0], t = b.coords[0];
      const auto u = a.coords.tail(kk), v = b.coords.tail(kk);
      r[0] = s * t + u.dot(v);
      r.tail(kk) = s * v + t * u;
      return Element{alg, std::move(r)};
    }
    case Family::RealSymmetric:
    case Family::ComplexHermitian:
    case Family::QuaternionHermitian:
    case Family::Albert:
      return from_hmatrix(alg, hm_sym(to_hmatrix(a), to_hmatrix(b)));
    case Family::DirectSum: {
      Eigen::VectorXd r(alg->dim());
      for (int i = 0; i < alg->num_factors(); ++i) {
        const int off = alg->factor_offset(i);
        const int d = alg->factor(i)->dim();
        Element fa{alg->factor(i), a.coords.segment(off, d)};
        Element fb{alg->factor(i), b.coords.segment(off, d)};
        r.segment(off, d) = jordan_mul(fa, fb).coords;
      }
      return Element{alg, std::move(r)};
    }
  }
  throw NumericalFailure("unreachable");
}

double trace_of(const Element& a) {
  const AlgebraKind& k = a.algebra->kind();
  switch (k.family) {
    case Family::Classical:
      return a.coords.sum();
    case Family::SpinFactor:
      return 2.0 * a.coords[0];
    case Family::RealSymmetric:
    case Family::ComplexHermitian:
    case Family::QuaternionHermitian:
      return a.coords.head(k.n).sum();
    case Family::Albert:
      return a.coords.head(3).sum();
    case Family::DirectSum: {
      double t = 0.0;
      for (int i = 0; i < a.algebra->num_factors(); ++i)
        t += trace_of(factor_part(a, i));
      return t;
    }
  }
  return 0.0;
}

double trace_form(const Element& a, const Element& b) {
  require_same_algebra(a, b, "trace_form");
  return a.coords.cwiseProduct(b.coords).dot(a.algebra->gram_diag());
}

double tnorm(const Element& a) {
  return std::sqrt(
      a.coords.cwiseProduct(a.coords).dot(a.algebra->gram_diag()));
}

Element factor_part(const Element& a, int i) {
  const AlgebraPtr& alg = a.algebra;
  if (alg->num_factors() == 0) {
    if (i != 0) throw DimensionMismatch("factor index out of range");
    return a;
  }
  const int off = alg->factor_offset(i);
  const int d = alg->factor(i)->dim();
  return Element{alg->factor(i), a.coords.segment(off, d)};
}

Element embed_factor(const AlgebraPtr& alg, int i, const Element& part) {
  if (alg->num_factors() == 0) {
    if (i != 0) throw DimensionMismatch("factor index out of range");
    return part;
  }
  Eigen::VectorXd r = Eigen::VectorXd::Zero(alg->dim());
  r.segment(alg->factor_offset(i), alg->factor(i)->dim()) = part.coords;
  return Element{alg, std::move(r)};
}

std::vector<std::string> catalog_specs() {
  return {"classical:8", "herm_r:5",  "herm_c:5",
          "herm_h:3",    "spin:10",   "albert",
          "sum:herm_c:2+herm_c:2"};
}

}  // namespace conelab
