#pragma once

#include <iosfwd>

namespace fqtrace {

// Runs the built-in oracle suites, printing one "PASS name" / "FAIL name"
// line per suite to `out`.  Each suite checks a core primitive against an
// independently coded route (brute-force enumeration, finite refinements,
// or re-presented inputs).  Returns the number of failed suites.
int run_selftests(std::ostream& out);

} // namespace fqtrace
