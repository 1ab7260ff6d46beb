#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace rsky::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs one subcommand (sky | nd | po | topk | metrics | gen | bench).
// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rsky::cli
