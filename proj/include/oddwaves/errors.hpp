#ifndef ODDWAVES_ERRORS_HPP
#define ODDWAVES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oddwaves {

// Bad user-supplied configuration (grid sizes, parameter ranges, config files).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Valid configuration but mathematically inadmissible input
// (nonzero mean where an operator needs mean-zero, data outside the band).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// API misuse (grid mismatch, wrong model selector).
struct usage_error : std::logic_error {
    explicit usage_error(const std::string& msg) : std::logic_error(msg) {}
};

// Filesystem / serialization failures.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace oddwaves

#endif
