#pragma once

#include <stdexcept>
#include <string>

namespace hybrid {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph construction
struct DuplicateIdentifier : Error { using Error::Error; };
struct DanglingEndpoint : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };

// expression parsing / evaluation
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};
struct UnknownVariable : Error { using Error::Error; };
struct UnknownFunction : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };

// regions and maps
struct DimensionMismatch : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct LeftRegion : Error {
  LeftRegion(const std::string& msg, double exit_time)
      : Error(msg), exit_time_estimate(exit_time) {}
  double exit_time_estimate;
};

// relations and systems
struct RegionMismatch : Error { using Error::Error; };
struct NotNondecreasing : Error { using Error::Error; };
struct StructuralMismatch : Error { using Error::Error; };
struct SourceMismatch : Error { using Error::Error; };

}  // namespace hybrid
