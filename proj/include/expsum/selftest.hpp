#pragma once

#include <iosfwd>

namespace expsum {

struct SelfTestOptions {
    bool quick = false; // reduced limits for a fast smoke pass
};

// Runs the acceptance scenarios, printing one PASS/FAIL line per criterion.
// Returns the number of failed criteria.
int run_acceptance(std::ostream& os, const SelfTestOptions& options = {});

} // namespace expsum
