#pragma once

#include <stdexcept>
#include <string>

namespace padyn {

// Every error raised by the library carries a stable name used by the CLI
// diagnostics and by the report records.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define PADYN_DEFINE_ERROR(Type)                                              \
    class Type : public Error {                                               \
    public:                                                                   \
        explicit Type(const std::string& what) : Error(#Type, what) {}        \
    }

PADYN_DEFINE_ERROR(NotPrime);
PADYN_DEFINE_ERROR(DegreeTooLarge);
PADYN_DEFINE_ERROR(NoIrreducibleFound);
PADYN_DEFINE_ERROR(PrecisionExhausted);
PADYN_DEFINE_ERROR(FieldMismatch);
PADYN_DEFINE_ERROR(NotIntegral);
PADYN_DEFINE_ERROR(PreconditionViolated);
PADYN_DEFINE_ERROR(BothCoordinatesVanish);
PADYN_DEFINE_ERROR(BadParameters);
PADYN_DEFINE_ERROR(ExponentTooLarge);
PADYN_DEFINE_ERROR(IndeterminatePoint);
PADYN_DEFINE_ERROR(EmptyWord);
PADYN_DEFINE_ERROR(DecodeAmbiguous);
PADYN_DEFINE_ERROR(DecodeEmpty);
PADYN_DEFINE_ERROR(ParseError);

#undef PADYN_DEFINE_ERROR

} // namespace padyn
