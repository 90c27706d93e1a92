#pragma once

#include <vector>
#include <string>

namespace qcensus::cli {

// Entry point behind the qcensus binary; returns the process exit code:
// 0 success, 2 validation error, 3 numeric failure.
int run(const std::vector<std::string>& argv);

}  // namespace qcensus::cli
