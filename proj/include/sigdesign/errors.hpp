#pragma once

#include <stdexcept>
#include <string>

namespace sigdesign {

enum class Err {
    // game_core
    MissingUtilityEntry,
    DuplicateLabel,
    EmptyAxis,
    BadRational,
    BadBelief,
    NotSimpleWithoutReferenceMessage,
    UnknownLabel,
    // exact_lp
    DimensionMismatch,
    // design_solver
    NonPureProfile,
    NonDirectSignal,
    ProfileLimitExceeded,
    // equilibrium_tools
    InputNotEquilibrium,
    NotCheapTalk,
    TooFewMessages,
    InputNotIC,
    NoEquilibriumFound,
    // value_analysis
    DegenerateExperiment,
    // scenarios
    UnknownScenario,
    ParameterConditionViolated,
    InfeasibleAtAllGridPoints,
    // io
    ParseError,
};

class DomainError : public std::runtime_error {
  public:
    DomainError(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw DomainError(code, what); }

}  // namespace sigdesign
