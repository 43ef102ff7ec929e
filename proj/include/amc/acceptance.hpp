// The cross-validation suite: every check the `validate` command runs, as a
// library so the CLI and the test harness share one implementation.
//
// Checks are deterministic in (seed, workers-independent) and self-contained:
// each derives its own substreams from the master seed, so running a subset
// reproduces exactly the same numbers as the full suite.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "amc/stats.hpp"

namespace amc::acceptance {

struct SuiteConfig {
    std::uint64_t seed = 0x5eedULL;
    unsigned workers = 0;  // 0 = resolve from env/hardware
};

// Names accepted by run_suite's `only` filter, in execution order.
const std::vector<std::string>& check_names();

// Runs the named checks (all when `only` is empty).  If `progress` is given,
// one "PASS name ..." / "FAIL name ..." line is written per check as it
// completes.  Unknown names throw std::invalid_argument.
std::vector<stats::CheckReport> run_suite(const SuiteConfig& config,
                                          const std::vector<std::string>& only = {},
                                          std::ostream* progress = nullptr);

bool all_passed(const std::vector<stats::CheckReport>& reports);

}  // namespace amc::acceptance
