#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

enum class ErrorCode {
    DistributionNotNormalized,
    UnknownState,
    UnknownAction,
    CyclicModel,
    EmptyModel,
    ParseError,
    NotPrefixFree,
    ResolutionSpaceTooLarge,
    UniverseTooLarge,
    FamilyTooLarge,
    SearchExhausted,
    ArithmeticOverflow,
    Usage,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    /// true for errors that signal an exhausted enumeration budget rather
    /// than bad input; callers may retry with a smaller instance.
    bool is_budget() const {
        return code_ == ErrorCode::ResolutionSpaceTooLarge || code_ == ErrorCode::UniverseTooLarge ||
               code_ == ErrorCode::FamilyTooLarge || code_ == ErrorCode::SearchExhausted;
    }

private:
    ErrorCode code_;
};

} // namespace spectra
