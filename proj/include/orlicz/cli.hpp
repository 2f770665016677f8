#pragma once

#include <string>
#include <vector>

namespace orlicz::cli {

// Dispatches the command line. Exit codes: 0 success, 1 usage or parse
// error, 2 falsification found, 3 numeric failure.
int run(const std::vector<std::string>& args);

} // namespace orlicz::cli
