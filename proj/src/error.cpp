#include "fakeplane/error.hpp"

namespace fakeplane {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonEquivariant: return "NonEquivariant";
        case ErrorKind::InvalidCenter: return "InvalidCenter";
        case ErrorKind::RationalityMismatch: return "RationalityMismatch";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::NotTransversal: return "NotTransversal";
        case ErrorKind::NotMinusOne: return "NotMinusOne";
        case ErrorKind::ConjugatesMeet: return "ConjugatesMeet";
        case ErrorKind::NonSNCResult: return "NonSNCResult";
        case ErrorKind::NotATree: return "NotATree";
        case ErrorKind::NotSigmaStable: return "NotSigmaStable";
        case ErrorKind::NotAFiber: return "NotAFiber";
        case ErrorKind::BoundaryNotSNC: return "BoundaryNotSNC";
        case ErrorKind::RankMismatch: return "RankMismatch";
        case ErrorKind::BNotContainingProperTransform: return "BNotContainingProperTransform";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::BreaksSymmetry: return "BreaksSymmetry";
        case ErrorKind::NoNonnegativeComponentReachable: return "NoNonnegativeComponentReachable";
        case ErrorKind::UnsupportedShape: return "UnsupportedShape";
        case ErrorKind::EvenMultiplicity: return "EvenMultiplicity";
        case ErrorKind::EvenBranch: return "EvenBranch";
        case ErrorKind::BadGrammar: return "BadGrammar";
        case ErrorKind::TwoRealDegenerateFibers: return "TwoRealDegenerateFibers";
        case ErrorKind::EmptyE: return "EmptyE";
        case ErrorKind::AmbiguousCascade: return "AmbiguousCascade";
        case ErrorKind::EtaNonPositive: return "EtaNonPositive";
        case ErrorKind::MatrixNotUnimodular: return "MatrixNotUnimodular";
        case ErrorKind::ConstraintViolated: return "ConstraintViolated";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ReplayError: return "ReplayError";
    }
    return "Unknown";
}

}  // namespace fakeplane
