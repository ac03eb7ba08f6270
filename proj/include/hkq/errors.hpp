#pragma once

#include <stdexcept>
#include <string>

namespace hkq {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error
{
    public:
        explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HKQ_DECLARE_ERROR(Name)                                               \
    class Name : public Error                                                 \
    {                                                                         \
        public:                                                               \
            explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

// Input validation (CLI exit code 2).
HKQ_DECLARE_ERROR(InvalidInput)
HKQ_DECLARE_ERROR(RankDeficient)
HKQ_DECLARE_ERROR(DimensionMismatch)
HKQ_DECLARE_ERROR(EnumerationTooLarge)

// Parameter problems (CLI exit code 3).
HKQ_DECLARE_ERROR(NonGenericAlpha)
HKQ_DECLARE_ERROR(NonGenericBeta)
HKQ_DECLARE_ERROR(CircleInsideTorus)
HKQ_DECLARE_ERROR(SamplingExhausted)
HKQ_DECLARE_ERROR(DegenerateNormal)
HKQ_DECLARE_ERROR(NotSimple)

// Internal invariant violations: these indicate a bug or a falsified assumption.
HKQ_DECLARE_ERROR(NonZeroRemainder)
HKQ_DECLARE_ERROR(PartitionViolation)

// Numerical laboratory.
HKQ_DECLARE_ERROR(NonFiniteState)
HKQ_DECLARE_ERROR(InsufficientTail)

#undef HKQ_DECLARE_ERROR

}  // namespace hkq
