#pragma once

namespace maxboot {

// Exit codes: 0 success, 1 validation failure, 2 usage/config error,
// 3 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int run_cli(int argc, const char* const* argv);

}  // namespace maxboot
