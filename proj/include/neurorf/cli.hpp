#pragma once

#include <string>
#include <vector>

namespace neurorf {

// Front end for the neurorf binary. Returns the process exit code:
// 0 success, 2 argument/file/validation problems, 3 engine failures.
int run_cli(const std::vector<std::string>& args);

}  // namespace neurorf
