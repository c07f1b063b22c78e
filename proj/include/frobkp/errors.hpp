#pragma once

#include <stdexcept>
#include <string>

namespace frobkp {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define FROBKP_ERROR(Name)                                         \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

FROBKP_ERROR(UntrustedRegion);
FROBKP_ERROR(IncompatibleSides);
FROBKP_ERROR(ZeroLeadingTerm);
FROBKP_ERROR(NonIntegerLeadingExponent);
FROBKP_ERROR(RootMismatch);
FROBKP_ERROR(NotNearIdentity);
FROBKP_ERROR(BadLeadingTerm);
FROBKP_ERROR(BadSupport);
FROBKP_ERROR(ZeroBottomCoefficient);
FROBKP_ERROR(InconsistentChart);
FROBKP_ERROR(SingularKMatrix);
FROBKP_ERROR(DegeneratePoint);
FROBKP_ERROR(IntegrationObstruction);
FROBKP_ERROR(RepeatedCriticalValue);
FROBKP_ERROR(ConfigError);
FROBKP_ERROR(PointParseError);
FROBKP_ERROR(NoCircleExpansion);
FROBKP_ERROR(FieldMismatch);

#undef FROBKP_ERROR

}  // namespace frobkp
