#pragma once

#include <iosfwd>

namespace lbl2vec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Parses argv and runs one subcommand: train, labels, retrieve, classify,
/// evaluate, analyze-keywords. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lbl2vec::cli
