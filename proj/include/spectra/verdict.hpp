#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectra/events.hpp"

namespace spectra {

/// Machine-checkable evidence for a "distinguished" verdict: the event (or
/// test + trace) on which the two sides differ, with the mismatched values.
/// `lines` is the machine-readable block printed by the CLI (same rational
/// syntax as the model format) so external scripts can re-verify.
struct Witness {
    std::string kind;
    std::optional<Event> event;
    std::vector<Rational> left;
    std::vector<Rational> right;
    std::vector<std::string> lines;
};

struct Verdict {
    bool equivalent = true;
    std::optional<Witness> witness;

    static Verdict equal() { return Verdict{}; }
    static Verdict distinguished(Witness w) { return Verdict{false, std::move(w)}; }
};

} // namespace spectra
