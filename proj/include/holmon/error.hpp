// Error codes for validation failures and precondition violations.
#pragma once

#include <stdexcept>
#include <string>

namespace holmon {

enum class Err {
  MissingEmptyOrFull,
  NotClosedUnderUnion,
  NotClosedUnderIntersection,
  UnknownPoint,
  UnknownArrow,
  NotOpen,
  CompositionDomain,
  Associativity,
  IdentityLaw,
  InverseLaw,
  EndpointOutsideU,
  NotWide,
  NotNormal,
  NotLoopOnly,
  NotSubset,
  PointNotInChart,
  InvalidChart,
  NotACover,
  GermMismatch,
  BaseMismatch,
  EndpointMismatch,
  NotInW,
  NotComposable,
  NotAdapted,
  OverlapDisagreement,
  NotPregroupoidMorphism,
  SourceCondition,
  ImageNotOpen,
  NotHomeoOntoImage,
  PointOutsideDomain,
  NoSectionThroughW,
  NormalityFailure,
  HypothesisFailureA,
  HypothesisFailureB,
  HypothesisFailureC,
  HypothesisFailureD,
  NotContinuousOnChart,
  TooLarge,
  Parse,
  CrossRef,
  Internal,
};

const char* err_name(Err e);

// Single exception type; the code identifies the failed contract and the
// message carries a witness.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace holmon
