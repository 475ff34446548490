#ifndef FUNDSOL_ERRORS_HPP
#define FUNDSOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fundsol {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonElliptic : Error {
  explicit NonElliptic(const std::string& msg) : Error(msg) {}
};

struct ContourTooSmall : Error {
  explicit ContourTooSmall(const std::string& msg) : Error(msg) {}
};

struct InvariantViolated : Error {
  explicit InvariantViolated(const std::string& msg) : Error(msg) {}
};

struct BadClassIndex : Error {
  explicit BadClassIndex(const std::string& msg) : Error(msg) {}
};

struct UnsupportedDimension : Error {
  explicit UnsupportedDimension(const std::string& msg) : Error(msg) {}
};

struct HalfSphereViolation : Error {
  explicit HalfSphereViolation(const std::string& msg) : Error(msg) {}
};

struct StencilOutOfDomain : Error {
  explicit StencilOutOfDomain(const std::string& msg) : Error(msg) {}
};

struct OutsideValidity : Error {
  explicit OutsideValidity(const std::string& msg) : Error(msg) {}
};

struct TooCloseToBoundary : Error {
  explicit TooCloseToBoundary(const std::string& msg) : Error(msg) {}
};

struct MissingDerivative : Error {
  explicit MissingDerivative(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

struct SupportExceedsValidity : Error {
  explicit SupportExceedsValidity(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct UnknownName : Error {
  explicit UnknownName(const std::string& msg) : Error(msg) {}
};

}  // namespace fundsol

#endif
