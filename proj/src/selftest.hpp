#pragma once

#include <vector>

#include "discrepancy/report.hpp"

namespace disc::detail {

/// Cross-checks every pair of algorithms that must agree, on a small fixed
/// suite. One record per check with status=pass|fail.
std::vector<Record> run_selftest();

}  // namespace disc::detail
