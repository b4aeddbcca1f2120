#ifndef ODDWAVES_SELFTEST_HPP
#define ODDWAVES_SELFTEST_HPP

#include <iosfwd>

namespace oddwaves {

/// Runs the operator/identity invariant suite, printing one line per check.
/// Returns the number of failed checks.
int run_selftest(std::ostream& out);

} // namespace oddwaves

#endif
