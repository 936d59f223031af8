// Batch command-line front end: instance generation, solving, ablation
// benchmarking, and correctness verification.
#pragma once

namespace ucom2::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitVerifyFailed = 5;

// Entry point shared by the binary and the CLI tests.
int run(int argc, const char* const* argv);

}  // namespace ucom2::cli
