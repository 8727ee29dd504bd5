#pragma once

#include <ostream>

namespace rendezvous {

// Exit codes: 0 success, 1 computation error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `rendezvous` tool. Data goes to `out`, diagnostics and
// warnings to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rendezvous
