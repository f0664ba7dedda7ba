#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace degenforge {

enum class Errc {
  InvalidInput,
  ParseError,
  DimensionTooLow,
  IncompatibleHorn,
  NotASelfEdge,
  MissingDegeneracies,
  UnfillableHorn,
  ConsistencyViolation,
  TruncationExhausted,
  MissingWitness,
  NoIdempotentEquivalence,
  NotQuasiSemicategory,
  NotInnerFibration,
  IncompatibleSubcomplexStructure,
  NotKan,
  InvalidCategory,
  RestrictionMismatch,
  PreconditionFailed,
};

std::string_view to_string(Errc code);

/// Location of the simplex an error is about, when there is one.
struct ErrorSite {
  int dim = 0;
  std::uint32_t index = 0;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<ErrorSite> site = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), site_(site) {}

  Errc code() const noexcept { return code_; }
  const std::optional<ErrorSite>& site() const noexcept { return site_; }

 private:
  Errc code_;
  std::optional<ErrorSite> site_;
};

}  // namespace degenforge
