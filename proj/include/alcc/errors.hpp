#pragma once

#include <stdexcept>
#include <string>

namespace alcc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };
struct CapabilityExceeded : Error { using Error::Error; };
struct InsufficientEvaluations : Error { using Error::Error; };
struct UndefinedMetric : Error { using Error::Error; };
struct Underdetermined : Error { using Error::Error; };

// Raised when a configured work limit would be exceeded.
struct GuardTrip : Error { using Error::Error; };

} // namespace alcc
