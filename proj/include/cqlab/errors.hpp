#pragma once

#include <stdexcept>
#include <string>

namespace cqlab {

// Base of every error the library raises. Callers that only care about
// "something went wrong in cqlab" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CQLAB_DEFINE_ERROR(Name)                  \
    class Name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

CQLAB_DEFINE_ERROR(NotCoprimeToRamified);
CQLAB_DEFINE_ERROR(NotSplitPrime);
CQLAB_DEFINE_ERROR(BothZero);
CQLAB_DEFINE_ERROR(InvalidCharacterValue);
CQLAB_DEFINE_ERROR(NonPositiveArgument);
CQLAB_DEFINE_ERROR(ConductorTooLargeForOracle);
CQLAB_DEFINE_ERROR(DivergentParameter);
CQLAB_DEFINE_ERROR(QuadratureNonConvergence);
CQLAB_DEFINE_ERROR(MissingLValues);
CQLAB_DEFINE_ERROR(MissingFamily);
CQLAB_DEFINE_ERROR(EmptyLadder);
CQLAB_DEFINE_ERROR(InvalidLadder);
CQLAB_DEFINE_ERROR(ZeroCentralValue);
CQLAB_DEFINE_ERROR(IOFailure);
CQLAB_DEFINE_ERROR(UsageError);

#undef CQLAB_DEFINE_ERROR

}  // namespace cqlab
