#include "degenforge/error.hpp"

namespace degenforge {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::ParseError: return "ParseError";
    case Errc::DimensionTooLow: return "DimensionTooLow";
    case Errc::IncompatibleHorn: return "IncompatibleHorn";
    case Errc::NotASelfEdge: return "NotASelfEdge";
    case Errc::MissingDegeneracies: return "MissingDegeneracies";
    case Errc::UnfillableHorn: return "UnfillableHorn";
    case Errc::ConsistencyViolation: return "ConsistencyViolation";
    case Errc::TruncationExhausted: return "TruncationExhausted";
    case Errc::MissingWitness: return "MissingWitness";
    case Errc::NoIdempotentEquivalence: return "NoIdempotentEquivalence";
    case Errc::NotQuasiSemicategory: return "NotQuasiSemicategory";
    case Errc::NotInnerFibration: return "NotInnerFibration";
    case Errc::IncompatibleSubcomplexStructure: return "IncompatibleSubcomplexStructure";
    case Errc::NotKan: return "NotKan";
    case Errc::InvalidCategory: return "InvalidCategory";
    case Errc::RestrictionMismatch: return "RestrictionMismatch";
    case Errc::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

}  // namespace degenforge
