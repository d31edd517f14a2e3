#pragma once

#include <stdexcept>
#include <string>

namespace rebp {

// Machine-readable failure categories. The CLI prints the category name on
// stderr and exits nonzero, so scripts can dispatch on it.
enum class Errc {
  // instance validation
  NegativeDuration,
  BudgetOutOfRange,
  EmptyInstance,
  UnassignedItem,
  ScenarioInfeasible,
  // solution / input shape
  FractionalInput,
  NonIntegerBudget,
  BadBox,
  // knapsack solving
  ProfitBoundOverflow,
  ScalingNotExact,
  TooLarge,
  EpsilonOutOfRange,
  // master solving
  CutsRequireEqualCosts,
  TooLargeForInternal,
  Infeasible,
  SolverNotFound,
  SolverReportedInfeasible,
  DuplicateScenario,
  // files and generators
  ParseError,
  VersionMismatch,
  IoError,
  BadSpec,
  // driver limits
  IterationLimit,
  TimeLimit,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NegativeDuration: return "NegativeDuration";
    case Errc::BudgetOutOfRange: return "BudgetOutOfRange";
    case Errc::EmptyInstance: return "EmptyInstance";
    case Errc::UnassignedItem: return "UnassignedItem";
    case Errc::ScenarioInfeasible: return "ScenarioInfeasible";
    case Errc::FractionalInput: return "FractionalInput";
    case Errc::NonIntegerBudget: return "NonIntegerBudget";
    case Errc::BadBox: return "BadBox";
    case Errc::ProfitBoundOverflow: return "ProfitBoundOverflow";
    case Errc::ScalingNotExact: return "ScalingNotExact";
    case Errc::TooLarge: return "TooLarge";
    case Errc::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case Errc::CutsRequireEqualCosts: return "CutsRequireEqualCosts";
    case Errc::TooLargeForInternal: return "TooLargeForInternal";
    case Errc::Infeasible: return "Infeasible";
    case Errc::SolverNotFound: return "SolverNotFound";
    case Errc::SolverReportedInfeasible: return "SolverReportedInfeasible";
    case Errc::DuplicateScenario: return "DuplicateScenario";
    case Errc::ParseError: return "ParseError";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::IoError: return "IoError";
    case Errc::BadSpec: return "BadSpec";
    case Errc::IterationLimit: return "IterationLimit";
    case Errc::TimeLimit: return "TimeLimit";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace rebp
