#pragma once

#include <iosfwd>

namespace uavmm {

// Quick oracle checks across all modules; prints one PASS/FAIL line per check
// and returns true when all pass. Runs in well under a second.
bool run_selftest(std::ostream& out);

}  // namespace uavmm
