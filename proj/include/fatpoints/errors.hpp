#pragma once

#include <stdexcept>
#include <string>

namespace fatpoints {

// Base for every failure this library raises on purpose.  The CLI maps any
// Error to exit code 1, except where a subcommand gives it a better meaning.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroInverse : Error {
  ZeroInverse() : Error("inverse of zero residue") {}
};

// sample_point_on ran out of attempts (e.g. the smooth locus is empty).
struct SamplingExhausted : Error {
  using Error::Error;
};

// frame_at asked to center coordinates at a point where the gradient vanishes.
struct SingularPoint : Error {
  using Error::Error;
};

// trace() of a free component: generically it misses the divisor entirely.
struct FreeComponent : Error {
  using Error::Error;
};

struct UnassignedSupport : Error {
  using Error::Error;
};

struct SingularSupport : Error {
  using Error::Error;
};

// Constrained part alone already exceeds the divisor's conditions budget.
struct TraceOverflow : Error {
  using Error::Error;
};

struct NotDerivable : Error {
  using Error::Error;
};

// A construction step produced something that is not a candidate.
struct CandidateViolation : Error {
  using Error::Error;
};

struct BadCharacteristic : Error {
  using Error::Error;
};

struct TruncationTooSmall : Error {
  using Error::Error;
};

}  // namespace fatpoints
