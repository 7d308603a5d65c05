#pragma once

#include <stdexcept>
#include <string>

namespace mono {

// Every failure the library reports deliberately. The kind drives the CLI
// exit code: validation-type kinds exit 2, numerical-type kinds exit 3.
enum class ErrorKind {
    DegenerateTriple,
    IdentityMap,
    SelfFoldedInterior,
    NotAPuncture,
    UnsupportedSurface,
    TriangulationMismatch,
    NonRegularInput,
    MutationPole,
    NonSemisimpleHolonomy,
    DegenerateInput,
    BudgetExceeded,
    NoPoles,
    DegenerateSurface,
    StepFailure,
    PathTooClose,
    SeedNotFound,
    ResonantOrApparent,
    AmbiguousMatch,
    RealizationRequired,
    InvalidInput,
    NumericalFailure,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

    // True for kinds caused by bad numerics rather than bad requests.
    bool numerical() const {
        switch (kind_) {
            case ErrorKind::StepFailure:
            case ErrorKind::PathTooClose:
            case ErrorKind::SeedNotFound:
            case ErrorKind::ResonantOrApparent:
            case ErrorKind::AmbiguousMatch:
            case ErrorKind::MutationPole:
            case ErrorKind::NonSemisimpleHolonomy:
            case ErrorKind::BudgetExceeded:
            case ErrorKind::NumericalFailure: return true;
            default: return false;
        }
    }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

const char* error_kind_name(ErrorKind kind);

} // namespace mono
