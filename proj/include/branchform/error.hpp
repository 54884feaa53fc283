#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace branchform {

enum class ErrorKind {
    AmbiguousOrder,
    TruncationTooSmall,
    NotMinimalGenerators,
    NotCoprime,
    InadmissiblePlaneBranchSemigroup,
    UnsupportedMultiplicity,
    NotPrimitive,
    NotNormalizable,
    NonRationalExpansion,
    NotIrreducibleAtOrigin,
    NotYGeneral,
    InvalidFamilyParameters,
    NotMultiplicityFour,
    NotInNormalShape,
    ReductionStalled,
    NoMatchingRow,
    NotNormalForm,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::AmbiguousOrder: return "AmbiguousOrder";
        case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorKind::NotMinimalGenerators: return "NotMinimalGenerators";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::InadmissiblePlaneBranchSemigroup: return "InadmissiblePlaneBranchSemigroup";
        case ErrorKind::UnsupportedMultiplicity: return "UnsupportedMultiplicity";
        case ErrorKind::NotPrimitive: return "NotPrimitive";
        case ErrorKind::NotNormalizable: return "NotNormalizable";
        case ErrorKind::NonRationalExpansion: return "NonRationalExpansion";
        case ErrorKind::NotIrreducibleAtOrigin: return "NotIrreducibleAtOrigin";
        case ErrorKind::NotYGeneral: return "NotYGeneral";
        case ErrorKind::InvalidFamilyParameters: return "InvalidFamilyParameters";
        case ErrorKind::NotMultiplicityFour: return "NotMultiplicityFour";
        case ErrorKind::NotInNormalShape: return "NotInNormalShape";
        case ErrorKind::ReductionStalled: return "ReductionStalled";
        case ErrorKind::NoMatchingRow: return "NoMatchingRow";
        case ErrorKind::NotNormalForm: return "NotNormalForm";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace branchform
