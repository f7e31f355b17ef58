#pragma once

#include <stdexcept>
#include <string>

namespace framecert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct DependentInput : Error { using Error::Error; };
struct FamilyTooSmall : Error { using Error::Error; };
struct NotABasis : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct NotADirectSum : Error { using Error::Error; };
struct FullSpaceMember : Error { using Error::Error; };
struct InconsistentMeasurements : Error { using Error::Error; };
struct NotExactlyRepresentable : Error { using Error::Error; };
struct NotTight : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct DependentPerturbation : Error { using Error::Error; };
struct GenerationFailed : Error { using Error::Error; };
struct UnknownFixture : Error { using Error::Error; };
struct DataError : Error { using Error::Error; };

}  // namespace framecert
