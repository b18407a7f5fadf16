#ifndef GERBECALC_ERRORS_HPP
#define GERBECALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gerbecalc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GERBECALC_DEFINE_ERROR(Name) \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  }

// liecore
GERBECALC_DEFINE_ERROR(SpecMismatch);
GERBECALC_DEFINE_ERROR(MembershipError);
GERBECALC_DEFINE_ERROR(BranchCutError);
GERBECALC_DEFINE_ERROR(ArityMismatch);

// complex
GERBECALC_DEFINE_ERROR(NonManifold);
GERBECALC_DEFINE_ERROR(NonOrientable);
GERBECALC_DEFINE_ERROR(NotClosed);
GERBECALC_DEFINE_ERROR(NotCone);

// dcalc
GERBECALC_DEFINE_ERROR(SupportMismatch);
GERBECALC_DEFINE_ERROR(DegreeMismatch);

// gerbedata
GERBECALC_DEFINE_ERROR(QuotientNotCocycle);
GERBECALC_DEFINE_ERROR(LiftNotInH);
GERBECALC_DEFINE_ERROR(NotSimplicial);

// connective / holonomy
GERBECALC_DEFINE_ERROR(InvalidCurving);
GERBECALC_DEFINE_ERROR(NotGluable);
GERBECALC_DEFINE_ERROR(NotConstant);

// io
GERBECALC_DEFINE_ERROR(ParseError);

#undef GERBECALC_DEFINE_ERROR

}  // namespace gerbecalc

#endif
