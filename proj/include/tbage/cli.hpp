#pragma once

#include <string>
#include <vector>

namespace tbage {

// Full command-line front end; argv-style arguments without the program name.
// Returns the process exit code: 0 on success, 1 on a domain or data error,
// 2 on a usage error.
int run_cli(const std::vector<std::string>& args);

}  // namespace tbage
