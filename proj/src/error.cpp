#include "qso/error.hpp"

namespace qso {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::SumOutOfRange: return "SumOutOfRange";
    case ErrorCode::RepeatedSymbol: return "RepeatedSymbol";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::MalformedSyntax: return "MalformedSyntax";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::RowSumNotOne: return "RowSumNotOne";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::PermutationSizeMismatch: return "PermutationSizeMismatch";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::UnexpectedParameter: return "UnexpectedParameter";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorCode::InapplicableFunction: return "InapplicableFunction";
    case ErrorCode::InsufficientTail: return "InsufficientTail";
    case ErrorCode::InapplicableSet: return "InapplicableSet";
    case ErrorCode::NeverEntersRegion: return "NeverEntersRegion";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qso
