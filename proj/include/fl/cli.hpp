#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fl::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kUsageError = 2 };

/// Runs one command line (without the program name). CSV or JSON goes to
/// `out` unless --out names a file; diagnostics and the run manifest go to
/// `err` (or next to the --out file as <out>.manifest.json).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace fl::cli
