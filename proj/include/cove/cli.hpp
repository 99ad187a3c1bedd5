#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cove::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kDataError = 3;
inline constexpr int kInternalError = 4;

// Runs one subcommand: gen-fixture, corr, attend, bench, viz or
// roundtrip-check. `args` excludes the program name. Failures print a
// single diagnostic line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace cove::cli
