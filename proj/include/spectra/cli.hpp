#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spectra {

/// The whole command-line tool behind a testable entry point.
/// Exit codes: 0 equivalent/clean, 1 distinguished or violations found,
/// 2 usage or input error, 3 enumeration budget exhausted.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace spectra
