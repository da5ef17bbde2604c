#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dfmcw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

// Entry point of the `dfmcw` tool. `args` excludes the program name. CSV goes
// to `out` (or --out), everything else to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfmcw::cli
