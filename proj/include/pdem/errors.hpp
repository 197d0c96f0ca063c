#pragma once

#include <stdexcept>
#include <string>

namespace pdem {

// Base of every error raised by the library. Subclasses name the failure
// category so callers (the CLI in particular) can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PDEM_DEFINE_ERROR(Name)                  \
    class Name : public Error {                  \
    public:                                      \
        using Error::Error;                      \
    }

PDEM_DEFINE_ERROR(DomainError);
PDEM_DEFINE_ERROR(NonPositiveError);
PDEM_DEFINE_ERROR(ParameterError);
PDEM_DEFINE_ERROR(SingularPoint);
PDEM_DEFINE_ERROR(SingularPotential);
PDEM_DEFINE_ERROR(NoRealRoot);
PDEM_DEFINE_ERROR(DegenerateClass);
PDEM_DEFINE_ERROR(NotFound);
PDEM_DEFINE_ERROR(RangeError);
PDEM_DEFINE_ERROR(IndexError);
PDEM_DEFINE_ERROR(ChainError);
PDEM_DEFINE_ERROR(ZeroNorm);
PDEM_DEFINE_ERROR(ConvergenceError);

#undef PDEM_DEFINE_ERROR

}  // namespace pdem
