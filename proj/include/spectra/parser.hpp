#pragma once

#include <string>

#include "spectra/model.hpp"

namespace spectra {

struct Npt; // testing.hpp

/// Line-oriented model format, '#' starts a comment:
///
///   nplts NAME
///   alphabet LABEL...
///   trans STATE LABEL -> STATE:RATIONAL, STATE:RATIONAL...
///
/// Rationals are INT or INT/INT; decimals are rejected. States are declared
/// implicitly by use.
Nplts parse_model(const std::string& text);

/// Same grammar with header "npt", a mandatory "root STATE" line, and the
/// reserved success state name "omega" (which must stay transition-free).
Npt parse_test(const std::string& text);

std::string serialize_model(const Nplts& m);
std::string serialize_test(const Npt& t);

Rational parse_rational(const std::string& token);

} // namespace spectra
