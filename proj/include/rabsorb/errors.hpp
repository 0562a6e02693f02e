// Exception hierarchy shared by all rabsorb modules. The C API and the CLI
// map these onto stable numeric codes (see rabsorb.h).
#ifndef RABSORB_ERRORS_HPP
#define RABSORB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rabsorb {

// Bad user input: invalid configuration values, violated preconditions that a
// caller could have checked, unsupported operation for the given pulse order.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at run time: propagation blew up, degenerate eigensystem,
// grid too coarse to resolve a feature.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem trouble while reading configs or writing results.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rabsorb

#endif
