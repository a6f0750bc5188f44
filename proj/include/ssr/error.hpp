#pragma once

#include <stdexcept>
#include <string>

namespace ssr {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SSR_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what = "") : Error(#Name, what) {} \
  };

SSR_DEFINE_ERROR(DivisionByNonInvertible)
SSR_DEFINE_ERROR(FieldMismatch)
SSR_DEFINE_ERROR(InvalidField)
SSR_DEFINE_ERROR(InconsistentSystem)
SSR_DEFINE_ERROR(DimensionMismatch)
SSR_DEFINE_ERROR(ZeroVector)
SSR_DEFINE_ERROR(DisagreementError)
SSR_DEFINE_ERROR(WrongConstruction)
SSR_DEFINE_ERROR(InvalidJ)
SSR_DEFINE_ERROR(DegenerateForm)
SSR_DEFINE_ERROR(CalibrationFailure)
SSR_DEFINE_ERROR(NotASquare)
SSR_DEFINE_ERROR(ZeroQuartic)
SSR_DEFINE_ERROR(WrongSquareClass)
SSR_DEFINE_ERROR(InvalidHatPoint)
SSR_DEFINE_ERROR(InvalidZGenPoint)
SSR_DEFINE_ERROR(NonInvertibleScalar)
SSR_DEFINE_ERROR(NotHeisenbergGraded)
SSR_DEFINE_ERROR(ParseError)

#undef SSR_DEFINE_ERROR

}  // namespace ssr
