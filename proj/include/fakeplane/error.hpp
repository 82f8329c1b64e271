#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fakeplane {

enum class ErrorKind {
    // galois
    NonEquivariant,
    // surfgraph
    InvalidCenter,
    RationalityMismatch,
    NotCoprime,
    NotTransversal,
    NotMinusOne,
    ConjugatesMeet,
    NonSNCResult,
    NotATree,
    NotSigmaStable,
    NotAFiber,
    // topocheck
    BoundaryNotSNC,
    RankMismatch,
    BNotContainingProperTransform,
    // chainform
    IndexOutOfRange,
    BreaksSymmetry,
    NoNonnegativeComponentReachable,
    UnsupportedShape,
    // rstandard
    EvenMultiplicity,
    EvenBranch,
    BadGrammar,
    TwoRealDegenerateFibers,
    EmptyE,
    AmbiguousCascade,
    // families
    EtaNonPositive,
    MatrixNotUnimodular,
    ConstraintViolated,
    BadParams,
    // cli
    ParseError,
    ReplayError,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fakeplane
