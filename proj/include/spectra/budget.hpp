#pragma once

#include <cstdint>
#include <cstdlib>

#include "spectra/error.hpp"

namespace spectra {

/// Counts enumeration work (resolutions produced, events enumerated, pairs
/// tried) against a hard limit. Exceeding the limit throws instead of
/// truncating: a truncated quantifier would make "equivalent" verdicts
/// unsound.
class Budget {
public:
    static constexpr std::int64_t kDefaultLimit = 10'000'000;

    explicit Budget(std::int64_t limit = default_limit()) : limit_(limit) {}

    void charge(std::int64_t amount, ErrorCode code = ErrorCode::ResolutionSpaceTooLarge) {
        used_ += amount;
        if (used_ > limit_)
            throw Error(code, "enumeration budget exhausted (limit " + std::to_string(limit_) + ")");
    }

    std::int64_t used() const { return used_; }
    std::int64_t limit() const { return limit_; }

    /// SPECTRA_BUDGET overrides the built-in default.
    static std::int64_t default_limit() {
        if (const char* env = std::getenv("SPECTRA_BUDGET")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end != env && v > 0) return v;
        }
        return kDefaultLimit;
    }

private:
    std::int64_t limit_;
    std::int64_t used_ = 0;
};

} // namespace spectra
