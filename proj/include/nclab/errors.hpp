#pragma once

#include <stdexcept>
#include <string>

namespace nclab {

// Base of every error raised by the library. exit_code() is what the CLI
// returns when the error escapes a command.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const noexcept { return 1; }
};

#define NCLAB_DEFINE_ERROR(Name, code)                                  \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
        int exit_code() const noexcept override { return code; }        \
    };

NCLAB_DEFINE_ERROR(InvalidParams, 10)
NCLAB_DEFINE_ERROR(MapNotInvertible, 11)
NCLAB_DEFINE_ERROR(InvalidGauge, 12)
NCLAB_DEFINE_ERROR(NonFiniteState, 13)
NCLAB_DEFINE_ERROR(DomainError, 14)
NCLAB_DEFINE_ERROR(DegenerateFormMisuse, 15)
NCLAB_DEFINE_ERROR(StepUnderflow, 16)
NCLAB_DEFINE_ERROR(UnreachableRatio, 17)
NCLAB_DEFINE_ERROR(ConfigError, 18)

#undef NCLAB_DEFINE_ERROR

}  // namespace nclab
