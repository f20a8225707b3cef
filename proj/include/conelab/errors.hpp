#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

// Base of everything thrown by the library. `code` is a stable machine tag
// that also ends up in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define CONELAB_DEFINE_ERROR(Name)                       \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(const std::string& what)               \
        : Error(#Name, what) {}                          \
  }

CONELAB_DEFINE_ERROR(InvalidKind);
CONELAB_DEFINE_ERROR(AlgebraMismatch);
CONELAB_DEFINE_ERROR(SpectralFailure);
CONELAB_DEFINE_ERROR(NotAnEffect);
CONELAB_DEFINE_ERROR(NotAnAtom);
CONELAB_DEFINE_ERROR(InvalidFrame);
CONELAB_DEFINE_ERROR(InconsistentOrthogonality);
CONELAB_DEFINE_ERROR(InvalidAutomorphism);
CONELAB_DEFINE_ERROR(NotPositiveDefinite);
CONELAB_DEFINE_ERROR(EpsilonOutOfRange);
CONELAB_DEFINE_ERROR(SizeMismatch);
CONELAB_DEFINE_ERROR(DimensionMismatch);
CONELAB_DEFINE_ERROR(NumericalFailure);
CONELAB_DEFINE_ERROR(NotAVertex);
CONELAB_DEFINE_ERROR(PointOutside);
CONELAB_DEFINE_ERROR(InvalidPolytope);
CONELAB_DEFINE_ERROR(NotAnAutomorphism);
CONELAB_DEFINE_ERROR(TooManyVertices);
CONELAB_DEFINE_ERROR(ParseError);

#undef CONELAB_DEFINE_ERROR

// Orthogonal-pair values of a candidate invariant form were not constant.
class EpsilonNotConstant : public Error {
 public:
  EpsilonNotConstant(double min_value, double max_value, const std::string& what)
      : Error("EpsilonNotConstant", what), min_value(min_value), max_value(max_value) {}
  double min_value;
  double max_value;
};

class SelfDualityViolated : public Error {
 public:
  explicit SelfDualityViolated(const std::string& what)
      : Error("SelfDualityViolated", what) {}
};

class NoTransporter : public Error {
 public:
  NoTransporter(std::string obstruction, const std::string& what)
      : Error("NoTransporter", what), obstruction(std::move(obstruction)) {}
  std::string obstruction;
};

}  // namespace conelab
