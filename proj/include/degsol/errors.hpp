#pragma once

#include <stdexcept>
#include <string>

namespace degsol {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroSpinor : Error {
  explicit ZeroSpinor(const std::string& what) : Error(what) {}
};

struct DegenerateParameter : Error {
  explicit DegenerateParameter(const std::string& what) : Error(what) {}
};

struct SingularTransform : Error {
  explicit SingularTransform(const std::string& what) : Error(what) {}
};

struct CoordinateViolation : Error {
  explicit CoordinateViolation(const std::string& what) : Error(what) {}
};

struct NonHermitianResidual : Error {
  explicit NonHermitianResidual(const std::string& what) : Error(what) {}
};

struct SingularDenominator : Error {
  explicit SingularDenominator(const std::string& what) : Error(what) {}
};

struct NonRealPotential : Error {
  explicit NonRealPotential(const std::string& what) : Error(what) {}
};

struct NoSolution : Error {
  NoSolution(const std::string& what, double residual_floor, double scale)
      : Error(what), residual_floor(residual_floor), scale(scale) {}
  double residual_floor;
  double scale;
};

struct DerivativeUnavailable : Error {
  explicit DerivativeUnavailable(const std::string& what) : Error(what) {}
};

struct DegenerateSlope : Error {
  explicit DegenerateSlope(const std::string& what) : Error(what) {}
};

struct ConstructionUnavailable : Error {
  explicit ConstructionUnavailable(const std::string& what) : Error(what) {}
};

struct InvalidConfig : Error {
  explicit InvalidConfig(const std::string& what) : Error(what) {}
};

struct UnknownChannel : Error {
  explicit UnknownChannel(const std::string& what) : Error(what) {}
};

struct NonPositiveProfile : Error {
  explicit NonPositiveProfile(const std::string& what) : Error(what) {}
};

struct NonPositiveInput : Error {
  explicit NonPositiveInput(const std::string& what) : Error(what) {}
};

struct UnknownFamily : Error {
  explicit UnknownFamily(const std::string& what) : Error(what) {}
};

}  // namespace degsol
