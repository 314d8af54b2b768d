#pragma once

#include <string>
#include <vector>

namespace qagap {

/// Entry point behind the qagap binary; exposed for in-process testing.
int run_cli(const std::vector<std::string>& args);

}  // namespace qagap
