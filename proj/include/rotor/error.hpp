#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

enum class ErrorKind {
  DegenerateVector,
  DegenerateSpan,
  OutOfDomain,
  OrderUnsupported,
  NonMonotonic,
  UnknownCurve,
  BadParameters,
  SyntaxError,
  UnknownIdentifier,
  EvalDomain,
  CenterOnCurve,
  DegenerateChord,
  SingularPoint,
  AxisProjectionDegenerate,
  DegenerateFrame,
  DegenerateProjection,
  CurvesIntersect,
  IrregularNet,
  NonTangentField,
  StepTooLarge,
  ProjectionCollapse,
  InconsistentDirections,
  RootCountMismatch,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateVector: return "DegenerateVector";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::OrderUnsupported: return "OrderUnsupported";
    case ErrorKind::NonMonotonic: return "NonMonotonic";
    case ErrorKind::UnknownCurve: return "UnknownCurve";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::EvalDomain: return "EvalDomain";
    case ErrorKind::CenterOnCurve: return "CenterOnCurve";
    case ErrorKind::DegenerateChord: return "DegenerateChord";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::AxisProjectionDegenerate: return "AxisProjectionDegenerate";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::DegenerateProjection: return "DegenerateProjection";
    case ErrorKind::CurvesIntersect: return "CurvesIntersect";
    case ErrorKind::IrregularNet: return "IrregularNet";
    case ErrorKind::NonTangentField: return "NonTangentField";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::ProjectionCollapse: return "ProjectionCollapse";
    case ErrorKind::InconsistentDirections: return "InconsistentDirections";
    case ErrorKind::RootCountMismatch: return "RootCountMismatch";
  }
  return "Unknown";
}

// Input problems (bad names, parameters, syntax) as opposed to numerical trouble.
inline bool is_config_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownCurve:
    case ErrorKind::BadParameters:
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::OrderUnsupported:
    case ErrorKind::NonMonotonic:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + (detail.empty() ? "" : ": " + detail)),
        kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Thrown with the parameter value attached, so callers can report "CenterOnCurve at t=...".
class PointError : public Error {
 public:
  PointError(ErrorKind kind, double t, const std::string& detail = "")
      : Error(kind, detail), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail = "") {
  throw Error(kind, detail);
}

}  // namespace rotor
