#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epithresh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point of the `epithresh` tool. args excludes the program name.
/// Returns 0 on success, 1 on usage errors, 2 on runtime errors.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epithresh
