#pragma once

#include <string>
#include <vector>

namespace tgc::cli {

/// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal-consistency
/// failure (including engine/oracle divergence in `verify`).
int run(const std::vector<std::string>& args);

}  // namespace tgc::cli
