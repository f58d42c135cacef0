#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rthes::service {

// Exit statuses of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPending = 3;    // unresolved ambiguities in a non-interactive run
inline constexpr int kExitAmbiguous = 4;  // query term needs --context

// `args` excludes the program name. With `interactive`, `index` prompts on
// `in` for every ambiguity left after the resolutions file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in,
            bool interactive);

}  // namespace rthes::service
