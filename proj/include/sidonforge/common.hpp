#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sidonforge {

using u8  = std::uint8_t;
using i8  = std::int8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Failure categories surfaced by the library. Each maps to one named error
// in a module contract; callers that care switch on code(), everyone else
// just sees a runtime_error with a readable message.
enum class Errc {
    NotInvertible,
    MixedGroups,
    InvalidGroup,
    GroupUnsupported,
    PrecisionOverflow,
    DegenerateSum,
    KTooLarge,
    NormalizationError,
    ClaimFailed,
    InfeasibleParameters,
    ZeroFunction,
    WindowTooLarge,
    ProbabilityOverflow,
    CeilingExceeded,
    InvalidParameter,
};

class SidonError : public std::runtime_error {
public:
    SidonError(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw SidonError(code, what);
}

} // namespace sidonforge
