#pragma once

#include <stdexcept>
#include <string>

namespace intertwine {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoleError : Error { using Error::Error; };
struct ToleranceNotMet : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct ParityError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct InconsistentRatio : Error { using Error::Error; };
struct ConductorError : Error { using Error::Error; };
struct InadmissibleError : Error { using Error::Error; };
struct UnsupportedPrime : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };

}  // namespace intertwine
