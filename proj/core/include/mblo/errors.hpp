#pragma once

#include <stdexcept>
#include <string>

namespace mblo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad sizes, out-of-range parameters).
struct InvalidArgument : Error {
  using Error::Error;
};

// An angle or brick parameter hits a divergent tan/sec or a vanishing denominator.
struct SingularParameter : Error {
  using Error::Error;
};

struct SynthesisError : Error {
  using Error::Error;
};

// Sampling requested outside the regime where the P-function is a density.
struct NonSimulable : Error {
  using Error::Error;
};

}  // namespace mblo
