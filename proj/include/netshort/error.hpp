#pragma once

#include <stdexcept>
#include <string>

namespace netshort {

enum class ErrorCode {
  ParseError,
  IoError,
  NotPlanar,
  Disconnected,
  DegenerateEdge,
  BadIndex,
  BadParameter,
  SameEdge,
  DegenerateSegment,
  CollinearOverlap,
  NoIntersection,
  NonMaximalCandidate,
  KindMismatch,
  EmptyInput,
  NotAPath,
  BadEpsilon,
  InfeasibleGeometry,
  EndpointOffLocus,
  BudgetExceeded,
  MethodMismatch,
  NotSimple,
  HullEdgeCrossesNetwork,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netshort
