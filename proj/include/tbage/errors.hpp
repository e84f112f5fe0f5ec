#pragma once

#include <stdexcept>
#include <string>

namespace tbage {

// Common base so callers can catch everything from this library at once.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define TBAGE_ERROR(NAME)                                            \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {} \
    }

TBAGE_ERROR(DomainError);
TBAGE_ERROR(DegenerateMixing);
TBAGE_ERROR(InvalidState);
TBAGE_ERROR(UnknownPreset);
TBAGE_ERROR(StepTooLarge);
TBAGE_ERROR(NonFiniteState);
TBAGE_ERROR(SpanTooShort);
TBAGE_ERROR(DegenerateParams);
TBAGE_ERROR(NoConvergence);
TBAGE_ERROR(DegenerateSeries);
TBAGE_ERROR(DataGap);
TBAGE_ERROR(RankDegenerate);
TBAGE_ERROR(TooManyFailures);
TBAGE_ERROR(EmptyCluster);
TBAGE_ERROR(ParseError);
TBAGE_ERROR(ConsistencyError);
TBAGE_ERROR(UnknownKey);
TBAGE_ERROR(MissingKey);
TBAGE_ERROR(InvalidOverride);
TBAGE_ERROR(HorizonTooShort);

#undef TBAGE_ERROR

}  // namespace tbage
